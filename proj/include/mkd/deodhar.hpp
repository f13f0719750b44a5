#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "mkd/coxeter.hpp"

namespace mkd {

// Polynomial in q with integer coefficients.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  static IntPolynomial constant(int64_t c);
  static IntPolynomial monomial(int64_t c, unsigned e);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return c_.empty() ? -1 : static_cast<int>(c_.rbegin()->first); }
  int64_t coeff(unsigned e) const;
  int64_t leading() const { return c_.empty() ? 0 : c_.rbegin()->second; }
  const std::map<unsigned, int64_t>& coeffs() const { return c_; }
  int64_t eval(int64_t q) const;

  IntPolynomial operator+(const IntPolynomial& o) const;
  IntPolynomial operator-(const IntPolynomial& o) const;
  IntPolynomial operator*(const IntPolynomial& o) const;
  bool operator==(const IntPolynomial& o) const { return c_ == o.c_; }

  std::string str() const;

 private:
  void put(unsigned e, int64_t c);
  std::map<unsigned, int64_t> c_;
};

// Closed integer intervals of admissible weights per degree.
struct WeightProfile {
  std::string label;
  std::map<int, std::pair<int, int>> entries;
  bool empty() const { return entries.empty(); }
};

// R-polynomials by the descent recursion, memoized per group. Concurrent
// callers may compute the same entry twice; the stored value is identical.
class RPolynomials {
 public:
  explicit RPolynomials(std::shared_ptr<const WeylGroup> W);

  const WeylGroup& group() const { return *W_; }
  IntPolynomial operator()(Element u, Element v) const;
  // One recursion step along the given right descent s of v, then memoized.
  IntPolynomial via_descent(Element u, Element v, int s) const;

 private:
  std::shared_ptr<const WeylGroup> W_;
  mutable std::shared_mutex mu_;
  mutable std::vector<std::unique_ptr<IntPolynomial>> memo_;
};

using DescentChooser = std::function<int(const WeylGroup&, Element v)>;
// Unmemoized recursion with a caller-chosen descent at every step.
IntPolynomial r_polynomial_with(const WeylGroup& W, Element u, Element v, const DescentChooser& choose);

// Table R[v][u] for all pairs, built level by level in length of v.
std::vector<std::vector<IntPolynomial>> r_polynomial_table(const WeylGroup& W);
std::vector<std::vector<IntPolynomial>> r_polynomial_table_parallel(const WeylGroup& W);

WeightProfile weight_envelope(const WeylGroup& W, Element u, Element v);
WeightProfile ext_profile_standard(const WeylGroup& W, Element u, Element v);
WeightProfile ext_profile_parabolic(const WeylGroup& W, Element u, Element v, int s);

// Multiplicative order of q modulo a prime ell.
uint64_t multiplicative_order(uint64_t q, uint64_t ell);

struct ProjectiveWeightReport {
  Element u;
  std::vector<std::pair<Element, std::pair<int, int>>> flag_intervals;
  std::pair<int, int> end_window;
  uint64_t ell = 0;
  uint64_t q = 0;
  uint64_t order = 0;
  int bound = 0;  // 2 l(w0) = |R|
  bool hypothesis_holds = false;
};

ProjectiveWeightReport projective_weight_certificate(const WeylGroup& W, Element u, uint64_t ell, uint64_t q);

// Point counts of Deodhar varieties in type A by enumerating complete flags
// over F_q, q in {2, 3, 4}. Entry [v][u] counts flags in position v to the
// standard flag and position u to the opposite flag.
std::vector<std::vector<uint64_t>> flag_count_table(const WeylGroup& W, unsigned q);
std::vector<std::vector<uint64_t>> flag_count_table_serial(const WeylGroup& W, unsigned q);
uint64_t flag_count(const WeylGroup& W, unsigned q, Element u, Element v);

}  // namespace mkd
