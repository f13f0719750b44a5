#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace mkd {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
// Row-major rational matrix. Lattice bases are stored as columns.
using QMatrix = std::vector<std::vector<Rational>>;

namespace qmat {
QMatrix zeros(size_t r, size_t c);
QMatrix identity(size_t n);
QMatrix from_int(const std::vector<std::vector<long long>>& a);
QMatrix mul(const QMatrix& A, const QMatrix& B);
QMatrix add(const QMatrix& A, const QMatrix& B);
QMatrix sub(const QMatrix& A, const QMatrix& B);
QMatrix scale(const QMatrix& A, const Rational& c);
QMatrix transpose(const QMatrix& A);
QMatrix hcat(const QMatrix& A, const QMatrix& B);
QMatrix columns(const QMatrix& A, size_t from, size_t to);
std::optional<QMatrix> inverse(const QMatrix& A);
Rational det(const QMatrix& A);
size_t rank(const QMatrix& A);
bool is_zero(const QMatrix& A);
// Solve A X = B; nullopt if inconsistent.
std::optional<QMatrix> solve(const QMatrix& A, const QMatrix& B);
std::string str(const QMatrix& A);
}  // namespace qmat

// l-adic valuation; +infinity is reported as INT32_MAX.
int valuation(const Rational& x, uint64_t ell);
int valuation(const BigInt& x, uint64_t ell);
bool is_integral(const Rational& x, uint64_t ell);
bool is_integral(const QMatrix& A, uint64_t ell);

// Elementary divisor valuations over the l-local integers (entries must be
// l-integral). Length equals the rank.
std::vector<int> local_smith_valuations(const QMatrix& A, uint64_t ell);
// Basis (columns) of the l-local column module of A.
QMatrix local_column_basis(const QMatrix& A, uint64_t ell);

struct WeightSupport {
  std::set<int> exponents;
};

WeightSupport weight_sum_rule(const WeightSupport& I, const WeightSupport& J);

// Free lattice over the l-local integers with an automorphism phi.
class PhiModule {
 public:
  PhiModule(QMatrix phi, uint64_t ell, BigInt q, int precision = 32);

  size_t rank() const { return phi_.size(); }
  const QMatrix& phi() const { return phi_; }
  uint64_t ell() const { return ell_; }
  const BigInt& q() const { return q_; }
  int precision() const { return precision_; }
  // q^i as a rational, i may be negative.
  Rational q_power(int i) const;

 private:
  QMatrix phi_;
  uint64_t ell_;
  BigInt q_;
  int precision_;
};

bool has_weights_from(const PhiModule& M, const WeightSupport& I);
// True when i -> q^i mod l is injective on I.
bool weights_separated(const WeightSupport& I, uint64_t ell, const BigInt& q);
PhiModule tensor(const PhiModule& M, const PhiModule& N);
// The phi-stable sublattice spanned by the given columns, in that basis.
PhiModule restrict_to(const PhiModule& M, const QMatrix& basis);

enum class Verdict { Decomposable, Indecomposable, Undecidable };
std::string to_string(Verdict v);

struct EigenSummand {
  std::string label;
  std::optional<int> exponent;
  std::optional<Rational> eigenvalue;
  uint64_t residue = 0;
  QMatrix basis;  // columns, integral
  bool exact = true;
};

struct Decomposition {
  Verdict verdict = Verdict::Undecidable;
  std::string reason;
  std::vector<EigenSummand> summands;
  QMatrix assembled;   // [B_1 | B_2 | ...]
  QMatrix conjugated;  // assembled^{-1} phi assembled
};

Decomposition decompose(const PhiModule& M);
// Independent check of a decomposable verdict: unit determinant, block
// diagonal conjugate, and nilpotency of (phi - lambda) on each block.
bool verify_decomposition(const PhiModule& M, const Decomposition& D);

struct SubQuotient {
  PhiModule sub;
  PhiModule quotient;
  Decomposition sub_verdict;
  Decomposition quotient_verdict;
};

// N given by basis columns; requires N phi-stable with torsion-free quotient.
SubQuotient stable_sub_quotient_split(const PhiModule& M, const QMatrix& sub_basis);

// M = O^g / (column span of relations), phi given on generators.
struct Presentation {
  size_t generators = 0;
  QMatrix relations;  // g x r
  QMatrix phi;        // g x g
};

struct FreeCover {
  PhiModule cover;
  QMatrix surjection;  // g x rank(cover): images of cover basis in generator coordinates
  int nilpotency_exponent = 0;
  bool identity = false;
  bool surjective_mod_ell = false;
};

FreeCover free_cover(const Presentation& P, const WeightSupport& I, uint64_t ell, const BigInt& q, int precision = 32);

}  // namespace mkd
