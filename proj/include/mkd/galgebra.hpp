#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mkd/linalg.hpp"

namespace mkd {

using SparseVec = std::vector<std::pair<uint32_t, uint32_t>>;  // (index, coefficient)
using GradedDims = std::map<int, size_t>;

// Laurent polynomial string such as "2 + 3q^2 + q^-1".
std::string dims_to_string(const GradedDims& d);

// Finite-dimensional graded algebra with a complete set of orthogonal
// idempotents e_0..e_{m-1} that are themselves basis elements. Every basis
// element b lies in e_left(b) A e_right(b) and is homogeneous.
class GradedAlgebra {
 public:
  GradedAlgebra(Fp F, std::vector<int> degree, std::vector<uint32_t> left, std::vector<uint32_t> right,
                std::vector<uint32_t> idempotents, std::vector<SparseVec> table);

  const Fp& field() const { return F_; }
  size_t dim() const { return degree_.size(); }
  int degree(uint32_t b) const { return degree_[b]; }
  uint32_t left(uint32_t b) const { return left_[b]; }
  uint32_t right(uint32_t b) const { return right_[b]; }
  size_t num_idempotents() const { return idem_.size(); }
  uint32_t idempotent(size_t k) const { return idem_[k]; }
  const std::vector<int>& degrees() const { return degree_; }

  // b_i * b_j
  const SparseVec& product(uint32_t i, uint32_t j) const { return table_[static_cast<size_t>(i) * dim() + j]; }
  Vec multiply(const Vec& a, const Vec& b) const;
  Vec unit() const;
  Vec basis_vector(uint32_t b) const;

  // Basis elements generating A as an algebra together with the idempotents.
  const std::vector<uint32_t>& generators() const { return gens_; }
  GradedDims graded_dims() const;
  bool nonnegatively_graded() const;
  int top_degree() const;

  bool check_associative() const;
  bool check_unit() const;
  GradedAlgebra opposite() const;

 private:
  void compute_generators();

  Fp F_;
  std::vector<int> degree_;
  std::vector<uint32_t> left_, right_, idem_;
  std::vector<SparseVec> table_;
  std::vector<uint32_t> gens_;
};

using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

// Graded right module. Elements are row vectors, m.a = m * action(a).
struct GradedModule {
  AlgebraPtr A;
  std::vector<int> degree;
  std::vector<uint32_t> block;  // m = m e_block
  std::vector<Mat> action;      // one per algebra basis element

  size_t dim() const { return degree.size(); }
  GradedDims graded_dims() const;
  // Dimensions of M e_k by degree.
  GradedDims graded_dims(uint32_t k) const;
  bool check() const;
};

// Right action of an algebra element as a dim M x dim M matrix.
Mat element_action(const GradedModule& M, const Vec& a);

GradedModule projective(const AlgebraPtr& A, uint32_t k);
GradedModule regular(const AlgebraPtr& A);
GradedModule shift(const GradedModule& M, int n);
GradedModule direct_sum(const GradedModule& M, const GradedModule& N);
GradedModule zero_module(const AlgebraPtr& A);

// Homogeneous maps M -> N raising degree by d, as dim M x dim N matrices.
std::vector<Mat> hom(const GradedModule& M, const GradedModule& N, int d);
GradedDims hom_dims(const GradedModule& M, const GradedModule& N);

struct SubModule {
  GradedModule module;
  Mat inclusion;  // dim sub x dim M
};
struct QuotientModule {
  GradedModule module;
  Mat projection;            // dim M x dim quotient
  std::vector<size_t> kept;  // basis vector of M lifting each quotient basis vector
};

// Rows must be homogeneous and span an A-stable subspace.
SubModule submodule(const GradedModule& M, const std::vector<Vec>& rows);
// Smallest submodule containing the given homogeneous rows.
SubModule generated_submodule(const GradedModule& M, const std::vector<Vec>& rows);
QuotientModule quotient(const GradedModule& M, const std::vector<Vec>& rows);
SubModule kernel(const GradedModule& M, const GradedModule& N, const Mat& f);
SubModule image(const GradedModule& M, const GradedModule& N, const Mat& f);
QuotientModule cokernel(const GradedModule& M, const GradedModule& N, const Mat& f);
bool is_module_map(const GradedModule& M, const GradedModule& N, const Mat& f);
// M A_+ for a non-negatively graded algebra.
SubModule radical(const GradedModule& M);

GradedModule v_forget(const GradedModule& M);

// Extension of scalars M (x)_A B along a degree-0 algebra map A -> B sending
// basis elements to basis elements and e_k to e_k.
struct InducedModule {
  GradedModule module;  // over B
  Mat unit;             // dim M x dim module, m -> m (x) 1
  // Free cover basis (M basis index of a generator, B basis element) and the
  // cover vector lifting each basis vector of the module.
  std::vector<std::pair<uint32_t, uint32_t>> free_basis;
  std::vector<size_t> kept;
};
InducedModule induce(const GradedModule& M, const AlgebraPtr& B, const std::vector<uint32_t>& embedding);
// N over B viewed over A.
GradedModule restrict_module(const GradedModule& N, const AlgebraPtr& A, const std::vector<uint32_t>& embedding);

struct Summand {
  GradedModule module;
  Mat inclusion;   // dim summand x dim M
  Mat projection;  // dim M x dim summand
};

// Krull-Schmidt splitting by Fitting decompositions of degree-0
// endomorphisms drawn from a seeded generator.
std::vector<Summand> decompose_module(const GradedModule& M, uint64_t seed = 1);
// Degree-0 endomorphism ring local: every element of a spanning set and of
// seeded random combinations is invertible or nilpotent.
bool endomorphisms_local(const GradedModule& M, uint64_t seed = 1);

bool isomorphic(const GradedModule& M, const GradedModule& N, uint64_t seed = 1);
// Some n with M = N<n>, if any.
std::optional<int> isomorphic_up_to_shift(const GradedModule& M, const GradedModule& N, uint64_t seed = 1);

// Primitive idempotents of A_0 obtained from decomposing each e_k A.
struct PrimitiveIdempotent {
  Vec element;
  uint32_t block;
};
std::vector<PrimitiveIdempotent> primitive_idempotents(const AlgebraPtr& A, uint64_t seed = 1);

struct SemisimpleReport {
  bool semisimple = false;
  std::string reason;
  std::vector<PrimitiveIdempotent> idempotents;
};
SemisimpleReport degree_zero_semisimple(const AlgebraPtr& A);

struct KoszulReport {
  bool nonneg_graded = false;
  bool semisimple_deg0 = false;
  bool linear = false;
  int cap = 0;
  int linear_up_to = -1;  // largest i with all K_0..K_i linear
  bool finite = false;    // resolution terminated below the cap
  std::string verdict;
  // ext[i][internal degree] = total dimension of Ext^i(A_0, A_0) pieces
  std::vector<std::map<int, size_t>> ext;
};

KoszulReport koszulity_check(const AlgebraPtr& A, int cap = -1);

struct ModuleResolutionReport {
  bool linear = false;
  int generator_degree = 0;
  bool single_generator_degree = true;
  int cap = 0;
  bool finite = false;
  std::vector<std::map<int, size_t>> generators;  // per homological degree
};

// Linearity of the minimal resolution relative to the generating degree.
ModuleResolutionReport koszul_module_check(const GradedModule& M, int cap = -1);

// Corner algebra eAe for e = sum of the given idempotents of A_0, regraded by
// deg'(a) = deg(a) + shift[y] - shift[x] for a in e_y A e_x.
struct CornerAlgebra {
  AlgebraPtr algebra;
  std::vector<Vec> basis;  // elements of A
};
CornerAlgebra corner_algebra(const AlgebraPtr& A, const std::vector<PrimitiveIdempotent>& idem,
                             const std::vector<int>& shifts);
// M e with deg'(m) = deg(m) - shift[x] for m in M e_x.
GradedModule corner_module(const GradedModule& M, const CornerAlgebra& K, const std::vector<PrimitiveIdempotent>& idem,
                           const std::vector<int>& shifts);

// Complex of graded modules with differential of degree 0 into the next term.
struct ComplexOfModules {
  int first = 0;  // cohomological degree of terms[0]
  std::vector<GradedModule> terms;
  std::vector<Mat> d;  // d[i]: terms[i] -> terms[i+1]
};

// Graded module with total-degree grading and a square-zero differential of
// degree +1 commuting with the action (the algebra carries zero differential).
struct DgModule {
  GradedModule module;
  Mat d;
  bool check() const;
  GradedDims dims() const { return module.graded_dims(); }
};

// Total degree n gathers M^{i,j} with i + j = n.
DgModule v_bar_shear(const ComplexOfModules& C);
ComplexOfModules shift_internal(const ComplexOfModules& C, int n);
DgModule shift_cohomological(const DgModule& D, int n);

}  // namespace mkd
