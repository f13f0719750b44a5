#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mkd/coxeter.hpp"
#include "mkd/galgebra.hpp"
#include "mkd/soergel.hpp"

namespace mkd {

// Translation through the wall of s: E -> E^s together with E^s as a right
// E-module and the trace used for the counit.
struct TranslationData {
  int s = 0;
  WallAlgebra wall;
  GradedModule bimodule;   // E^s restricted to a right E-module
  std::vector<Vec> trace;  // E^s basis element -> element of E, degree +2
};

// Everything needed to work in the graded model for one (type, l).
struct GradedModel {
  std::shared_ptr<const WeylGroup> W;
  std::shared_ptr<const CoinvariantAlgebra> C;
  EndAlgebra E;
  std::vector<TranslationData> walls;  // indexed by simple reflection
};

GradedModel build_model(CartanType type, uint32_t ell);
GradedModel build_model(std::shared_ptr<const WeylGroup> W, uint32_t ell);
TranslationData translation_data(const EndAlgebra& E, int s);
TranslationData translation_data(const EndAlgebra& E, WallAlgebra wall);

// T^s_! M = M (x)_E E^s, with the unit m -> m (x) 1.
InducedModule translate_to_wall(const GradedModule& M, const TranslationData& T);
// T_s N: restriction to E.
GradedModule translate_from_wall(const GradedModule& N, const TranslationData& T, const AlgebraPtr& E);
// T_s T^s_! M -> M raising degree by 2, i.e. degree 0 into M<-2>.
Mat translation_counit(const GradedModule& M, const InducedModule& TM, const TranslationData& T);
// Graded dimensions of T^s_* M = Hom_E(E^s, M).
GradedDims coinduced_dims(const GradedModule& M, const TranslationData& T);

// Indecomposable graded projective for x: Q_x = eps_x E, the new summand of
// e_{f_x} E, and P_x = Q_x<-l(x)>.
struct GradedProjective {
  Element x = 0;
  PrimitiveIdempotent idempotent;
  GradedModule module;  // Q_x, generator in degree 0
  int shift = 0;        // P_x = Q_x<shift>
};
std::vector<GradedProjective> graded_projectives(const GradedModel& G, uint64_t seed = 1);

// Head of Q_x: the quotient by the largest submodule killed by the character of eps_x E_0 eps_x.
GradedModule graded_simple(const GradedModel& G, const GradedProjective& P);

struct GradedStandard {
  Element x = 0;
  Word word;
  GradedModule module;
};

// M_e = e_0 E; M_{xs}<-1> = coker(M_x -> T_s T^s_! M_x) along the given
// reduced word (shortlex normal form by default).
GradedStandard graded_standard(const GradedModel& G, Element x, std::optional<Word> word = std::nullopt);

// Memoizing builder for all standards along normal forms.
class StandardCache {
 public:
  explicit StandardCache(const GradedModel& G) : G_(G) {}
  const GradedStandard& get(Element x);

 private:
  const GradedModel& G_;
  std::map<Element, GradedStandard> done_;
};

struct StandardEmbedding {
  Element x = 0;
  int s = 0;
  Mat map;  // M_{xs} -> M_x<-1>, degree 0
  bool injective = false;
  bool composite_zero = false;  // M_x -> T_s T^s_! M_x -> M_x<-2> vanishes
  bool unit_injective = false;
};
StandardEmbedding standard_embedding(const GradedModel& G, const GradedStandard& Mx, int s);

struct HomEntry {
  size_t dim = 0;           // dim Hom(v M_x, v M_y)
  std::vector<int> shifts;  // degrees d with Hom(M_x, M_y)_d != 0
  bool injective = true;    // every nonzero homogeneous map injective
};
// table[x][y] for all x, y in W
std::vector<std::vector<HomEntry>> hom_standard_table(const GradedModel& G, StandardCache& S);

// [M : L_y<k>] = dim (M eps_y)_k
std::map<std::pair<Element, int>, size_t> graded_multiplicities(const GradedModule& M,
                                                                          const std::vector<GradedProjective>& P);

// Corner algebra eps E eps with eps = sum eps_x, regraded by k_x = -l(x).
CornerAlgebra koszul_dual_candidate(const GradedModel& G, const std::vector<GradedProjective>& P);

// E^s as a left E-module: summands matched to indecomposable projectives up to shift.
struct ProjectivityReport {
  bool projective = false;
  size_t summands = 0;
  std::string reason;
};
ProjectivityReport wall_left_projective(const GradedModel& G, int s, uint64_t seed = 1);

}  // namespace mkd
