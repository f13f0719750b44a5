#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mkd {

bool is_prime(uint64_t n);

// Prime field F_p with p < 2^31.
class Fp {
 public:
  explicit Fp(uint32_t p);

  uint32_t p() const { return p_; }
  uint32_t add(uint32_t a, uint32_t b) const {
    uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  uint32_t sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : a + p_ - b; }
  uint32_t neg(uint32_t a) const { return a ? p_ - a : 0; }
  uint32_t mul(uint32_t a, uint32_t b) const {
    return static_cast<uint32_t>(static_cast<uint64_t>(a) * b % p_);
  }
  uint32_t pow(uint32_t a, uint64_t e) const;
  uint32_t inv(uint32_t a) const;
  uint32_t from(int64_t x) const;
  int64_t centered(uint32_t a) const;

  bool operator==(const Fp& o) const { return p_ == o.p_; }

 private:
  uint32_t p_;
};

using Vec = std::vector<uint32_t>;

class Mat {
 public:
  Mat() = default;
  Mat(size_t rows, size_t cols) : r_(rows), c_(cols), a_(rows * cols, 0) {}

  static Mat identity(size_t n);

  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  uint32_t& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
  uint32_t operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }
  uint32_t* row(size_t i) { return a_.data() + i * c_; }
  const uint32_t* row(size_t i) const { return a_.data() + i * c_; }
  Vec row_vec(size_t i) const { return Vec(row(i), row(i) + c_); }
  Vec col_vec(size_t j) const;
  void set_row(size_t i, const Vec& v);
  void set_col(size_t j, const Vec& v);
  void append_row(const Vec& v);
  bool is_zero() const;
  std::vector<uint32_t>& data() { return a_; }
  const std::vector<uint32_t>& data() const { return a_; }

  bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

 private:
  size_t r_ = 0;
  size_t c_ = 0;
  std::vector<uint32_t> a_;
};

Mat mul(const Fp& F, const Mat& A, const Mat& B);
Vec mul(const Fp& F, const Mat& A, const Vec& x);
Mat add(const Fp& F, const Mat& A, const Mat& B);
Mat sub(const Fp& F, const Mat& A, const Mat& B);
Mat scale(const Fp& F, const Mat& A, uint32_t c);
Mat transpose(const Mat& A);
Mat from_rows(size_t cols, const std::vector<Vec>& rows);

void axpy(const Fp& F, Vec& y, uint32_t a, const Vec& x);
bool is_zero(const Vec& v);

// Reduced row echelon form in place; returns pivot columns.
std::vector<size_t> rref(const Fp& F, Mat& A);
// Same result, elimination across rows split over OpenMP threads.
std::vector<size_t> rref_parallel(const Fp& F, Mat& A);

size_t rank(const Fp& F, Mat A);
// Rows form a basis of {x : A x = 0}.
Mat nullspace(const Fp& F, const Mat& A);
std::optional<Vec> solve(const Fp& F, const Mat& A, const Vec& b);
std::optional<Mat> inverse(const Fp& F, const Mat& A);

// Polynomials over F_p, coefficient i of x^i, no trailing zeros.
using Poly = std::vector<uint32_t>;
void trim(Poly& a);
Poly poly_mul(const Fp& F, const Poly& a, const Poly& b);
Poly poly_sub(const Fp& F, const Poly& a, const Poly& b);
Poly poly_mod(const Fp& F, Poly a, const Poly& m);
Poly poly_div(const Fp& F, Poly a, const Poly& m);
Poly poly_gcd(const Fp& F, Poly a, Poly b);
Poly poly_powmod(const Fp& F, Poly base, uint64_t e, const Poly& m);
Poly poly_derivative(const Fp& F, const Poly& a);
Mat poly_eval(const Fp& F, const Poly& a, const Mat& A);
Poly charpoly(const Fp& F, const Mat& A);

// Row space with reduced echelon maintenance and optional coordinate tracking
// relative to the vectors inserted so far.
class RowSpace {
 public:
  RowSpace(const Fp& F, size_t n, bool track = false) : F_(F), n_(n), track_(track) {}

  size_t ambient() const { return n_; }
  size_t dim() const { return rows_.size(); }
  // Returns true if v enlarged the space.
  bool insert(const Vec& v);
  Vec reduce(Vec v) const;
  bool contains(const Vec& v) const;
  // Coordinates with respect to the accepted inserted vectors (track mode).
  std::optional<Vec> coords(const Vec& v) const;
  const std::vector<Vec>& echelon_rows() const { return rows_; }
  const std::vector<size_t>& pivots() const { return piv_; }
  const std::vector<Vec>& accepted() const { return accepted_; }
  // Indices in 0..n-1 not used as pivots, ascending.
  std::vector<size_t> free_columns() const;

 private:
  Fp F_;
  size_t n_;
  bool track_;
  std::vector<Vec> rows_;
  std::vector<size_t> piv_;
  std::vector<Vec> comb_;
  std::vector<Vec> accepted_;
};

}  // namespace mkd
