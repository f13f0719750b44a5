#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mkd/galgebra.hpp"
#include "mkd/linalg.hpp"

namespace mkd {

using Bidegree = std::pair<int, int>;  // (cohomological i, internal j)
using BigradedDims = std::map<Bidegree, size_t>;

// Finite-dimensional bigraded dg-algebra. The differential has bidegree
// (1, 0) and satisfies d(ab) = d(a) b + (-1)^i a d(b) for a of bidegree (i, j).
struct BigradedDgAlgebra {
  uint32_t p = 101;
  std::vector<Bidegree> bideg;
  uint32_t unit = 0;              // basis index of 1
  std::vector<SparseVec> table;   // b_i b_j at i * dim + j
  Mat d;                          // row convention: d(b_i) = row i

  size_t dim() const { return bideg.size(); }
  Fp field() const { return Fp(p); }
  Vec multiply(const Vec& a, const Vec& b) const;
  Vec differential(const Vec& v) const;
  BigradedDims dims() const;
  // Empty when every axiom holds, otherwise the first violation found.
  std::string validate() const;
};

// Basis vectors in bidegree (i, j), ascending.
std::vector<size_t> basis_in(const BigradedDgAlgebra& R, Bidegree b);

struct Cohomology {
  BigradedDgAlgebra algebra;  // zero differential
  std::vector<Vec> reps;      // cocycle in R for each basis element of H
  // Class of a homogeneous cocycle in H coordinates; nullopt if not a cocycle.
  std::optional<Vec> class_of(const Vec& cocycle) const;

  struct Piece {
    RowSpace space;  // boundaries, then representatives
    size_t boundaries = 0;
    std::vector<size_t> classes;  // H basis indices of the representatives
  };
  std::map<Bidegree, Piece> pieces;
  std::vector<Bidegree> source_bideg;
};

// Throws std::invalid_argument when R violates the axioms.
Cohomology cohomology(const BigradedDgAlgebra& R);

// H^{i,j} = 0 whenever j != i.
bool diagonal_check(const BigradedDgAlgebra& R);

struct ShearResult {
  BigradedDgAlgebra sub;  // R_> with (+)_{j>i} R^{i,j} + ker(d: R^{i,i} -> R^{i+1,i})
  Mat inclusion;          // dim sub x dim R
  BigradedDgAlgebra cohomology;
  Mat projection;         // dim sub x dim H; zero on j > i, class map on the diagonal kernel
  bool subalgebra = false;
};
ShearResult shear_subalgebra(const BigradedDgAlgebra& R);

struct QuasiIsoReport {
  bool quasi_iso = false;
  std::map<Bidegree, std::pair<size_t, size_t>> ranks;  // (rank of H(f), dims of H on both sides if equal)
  std::string reason;
};
// f: A -> B in the row convention (dim A x dim B). Throws if f is not a
// bidegree-preserving chain map.
QuasiIsoReport verify_quasi_iso(const BigradedDgAlgebra& A, const BigradedDgAlgebra& B, const Mat& f);

// Bigraded complex of vector spaces; d has bidegree (1, 0).
struct BigradedComplex {
  uint32_t p = 101;
  std::vector<Bidegree> bideg;
  Mat d;
  BigradedDims dims() const;
};

// Omega(M)^{i,j} = M^{i+j,j}: the vector at (a, b) moves to (a - b, b).
BigradedComplex omega_shear(const BigradedComplex& M);
BigradedComplex omega_inverse(const BigradedComplex& M);
// M<n>: internal shift (a, b) -> (a, b + n).
BigradedComplex internal_shift(const BigradedComplex& M, int n);
// M[n]: (a, b) -> (a - n, b) with d negated for odd n.
BigradedComplex cohomological_shift(const BigradedComplex& M, int n);
bool same_complex(const BigradedComplex& A, const BigradedComplex& B);

// Second grading from a Frobenius weight: eigenvalue q^e gives j = -2e.
int internal_degree_from_weight(int exponent);

struct RandomDgOptions {
  uint32_t p = 101;
  size_t max_dim = 40;
  int max_pairs = 6;
};
// Diagonal truncated polynomial algebra with acyclic pairs a -> b adjoined in
// the augmentation ideal with zero products; cohomology is diagonal.
BigradedDgAlgebra random_diagonal_instance(uint64_t seed, const RandomDgOptions& opt = {});
// Unit plus w in bidegree (1, 0), d = 0, w^2 = 0.
BigradedDgAlgebra non_diagonal_instance(uint32_t p = 101);

}  // namespace mkd
