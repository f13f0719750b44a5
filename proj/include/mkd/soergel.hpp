#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "mkd/coxeter.hpp"
#include "mkd/galgebra.hpp"
#include "mkd/linalg.hpp"

namespace mkd {

// Coinvariant algebra of W over F_l, generators in degree 2. Elements are
// vectors over a monomial basis ordered by degree.
class CoinvariantAlgebra {
 public:
  CoinvariantAlgebra(std::shared_ptr<const WeylGroup> W, uint32_t ell);

  const Fp& field() const { return F_; }
  const WeylGroup& group() const { return *W_; }
  std::shared_ptr<const WeylGroup> group_ptr() const { return W_; }
  size_t dim() const { return degree_.size(); }
  int degree(size_t b) const { return degree_[b]; }
  const std::vector<int>& monomial(size_t b) const { return mono_[b]; }
  GradedDims hilbert_series() const;
  int top_degree() const;

  Vec one() const;
  Vec generator(int i) const;
  Vec multiply(const Vec& a, const Vec& b) const;
  const Mat& reflection(int s) const { return refl_[s]; }  // row convention: c -> c R
  const Mat& demazure_matrix(int s) const { return dem_[s]; }
  Vec reflect(int s, const Vec& c) const;
  Vec demazure(int s, const Vec& c) const;
  // Basis of C^s = ker of the Demazure operator.
  const std::vector<Vec>& invariants(int s) const { return inv_[s]; }
  // Degree-2 element with demazure(s, delta) = 1.
  const Vec& delta(int s) const { return delta_[s]; }
  // Multiplication by c as a matrix in the row convention.
  Mat mult_matrix(const Vec& c) const;

 private:
  std::shared_ptr<const WeylGroup> W_;
  Fp F_;
  std::vector<int> degree_;
  std::vector<std::vector<int>> mono_;
  std::vector<SparseVec> table_;  // dim x dim
  std::vector<Mat> refl_, dem_;
  std::vector<std::vector<Vec>> inv_;
  std::vector<Vec> delta_;
};

// D_f = C (x)_{C^{s_1}} C (x) ... (x)_{C^{s_k}} k. rep[b] is the action of
// the C basis element b in the row convention.
struct BSModule {
  Word word;
  std::vector<int> degree;
  std::vector<Mat> rep;
  size_t dim() const { return degree.size(); }
  GradedDims graded_dims() const;
};

BSModule bott_samelson(const CoinvariantAlgebra& C, const Word& f);

// Degree-raising-by-d module maps D_g -> D_f (dim D_g x dim D_f), linear over
// C, or over C^s when wall is set.
std::vector<Mat> graded_hom(const CoinvariantAlgebra& C, const BSModule& Dg, const BSModule& Df, int d,
                            std::optional<int> wall = std::nullopt);
GradedDims graded_hom_dims(const CoinvariantAlgebra& C, const BSModule& Dg, const BSModule& Df,
                           std::optional<int> wall = std::nullopt);

struct EndAlgebra {
  std::shared_ptr<const CoinvariantAlgebra> C;
  std::vector<Word> family;
  std::vector<BSModule> modules;
  std::optional<int> wall;
  AlgebraPtr algebra;     // left = target index, right = source index
  std::vector<Mat> maps;  // per basis element, dim D_source x dim D_target
};

// E_F = End_C(D); multiplication a.b = a o b.
EndAlgebra endomorphism_algebra(std::shared_ptr<const CoinvariantAlgebra> C, const std::vector<Word>& family);

struct WallAlgebra {
  EndAlgebra algebra;               // E^s = End_{C^s}(D)
  std::vector<uint32_t> embedding;  // E basis index -> E^s basis index
};
WallAlgebra wall_algebra(const EndAlgebra& E, int s);

// E^s as a right E-module through the embedding.
GradedModule wall_as_right_module(const EndAlgebra& E, const WallAlgebra& Es);

// Frobenius trace E^s -> E raising degree by 2: phi -> phi o delta_s - s(delta_s) o phi,
// with C acting on each D_f. One E vector per E^s basis element; an
// E-bimodule map.
std::vector<Vec> wall_trace(const EndAlgebra& E, const WallAlgebra& Es);

struct ShiftCheck {
  bool holds = false;
  int shift = 2;
  // per (f, g): graded dims of Hom_{-E}(e_g E^s, e_f E) and of e_f E^s e_g <shift>
  std::vector<std::pair<GradedDims, GradedDims>> pieces;
};

// Hom_{-E}(E^s, E) = E^s<2> at the level of graded dimensions, blockwise.
ShiftCheck bimodule_shift_check(const EndAlgebra& E, const WallAlgebra& Es);

}  // namespace mkd
