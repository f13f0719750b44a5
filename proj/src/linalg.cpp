#include "mkd/linalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace mkd {

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Fp::Fp(uint32_t p) : p_(p) {
  if (p >= (1u << 31) || !is_prime(p)) throw std::invalid_argument("Fp: modulus must be a prime below 2^31");
}

uint32_t Fp::pow(uint32_t a, uint64_t e) const {
  uint32_t r = 1 % p_;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

uint32_t Fp::inv(uint32_t a) const {
  if (a % p_ == 0) throw std::domain_error("Fp: inverse of zero");
  return pow(a, p_ - 2);
}

uint32_t Fp::from(int64_t x) const {
  int64_t r = x % static_cast<int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<uint32_t>(r);
}

int64_t Fp::centered(uint32_t a) const {
  return a > p_ / 2 ? static_cast<int64_t>(a) - static_cast<int64_t>(p_) : static_cast<int64_t>(a);
}

Mat Mat::identity(size_t n) {
  Mat I(n, n);
  for (size_t i = 0; i < n; ++i) I(i, i) = 1;
  return I;
}

Vec Mat::col_vec(size_t j) const {
  Vec v(r_);
  for (size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Mat::set_row(size_t i, const Vec& v) { std::copy(v.begin(), v.end(), row(i)); }

void Mat::set_col(size_t j, const Vec& v) {
  for (size_t i = 0; i < r_; ++i) (*this)(i, j) = v[i];
}

void Mat::append_row(const Vec& v) {
  if (r_ == 0 && c_ == 0) c_ = v.size();
  if (v.size() != c_) throw std::invalid_argument("Mat::append_row: width mismatch");
  a_.insert(a_.end(), v.begin(), v.end());
  ++r_;
}

bool Mat::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](uint32_t x) { return x == 0; });
}

Mat mul(const Fp& F, const Mat& A, const Mat& B) {
  if (A.cols() != B.rows()) throw std::invalid_argument("mul: shape mismatch");
  Mat C(A.rows(), B.cols());
  const uint64_t p = F.p();
  std::vector<uint64_t> acc(B.cols());
  for (size_t i = 0; i < A.rows(); ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (size_t k = 0; k < A.cols(); ++k) {
      uint64_t a = A(i, k);
      if (!a) continue;
      const uint32_t* b = B.row(k);
      for (size_t j = 0; j < B.cols(); ++j) acc[j] = (acc[j] + a * b[j]) % p;
    }
    for (size_t j = 0; j < B.cols(); ++j) C(i, j) = static_cast<uint32_t>(acc[j]);
  }
  return C;
}

Vec mul(const Fp& F, const Mat& A, const Vec& x) {
  if (A.cols() != x.size()) throw std::invalid_argument("mul: shape mismatch");
  Vec y(A.rows());
  const uint64_t p = F.p();
  for (size_t i = 0; i < A.rows(); ++i) {
    uint64_t s = 0;
    const uint32_t* a = A.row(i);
    for (size_t k = 0; k < x.size(); ++k) s = (s + static_cast<uint64_t>(a[k]) * x[k]) % p;
    y[i] = static_cast<uint32_t>(s);
  }
  return y;
}

Mat add(const Fp& F, const Mat& A, const Mat& B) {
  Mat C = A;
  for (size_t i = 0; i < C.data().size(); ++i) C.data()[i] = F.add(A.data()[i], B.data()[i]);
  return C;
}

Mat sub(const Fp& F, const Mat& A, const Mat& B) {
  Mat C = A;
  for (size_t i = 0; i < C.data().size(); ++i) C.data()[i] = F.sub(A.data()[i], B.data()[i]);
  return C;
}

Mat scale(const Fp& F, const Mat& A, uint32_t c) {
  Mat C = A;
  for (auto& x : C.data()) x = F.mul(x, c);
  return C;
}

Mat transpose(const Mat& A) {
  Mat T(A.cols(), A.rows());
  for (size_t i = 0; i < A.rows(); ++i)
    for (size_t j = 0; j < A.cols(); ++j) T(j, i) = A(i, j);
  return T;
}

Mat from_rows(size_t cols, const std::vector<Vec>& rows) {
  Mat M(rows.size(), cols);
  for (size_t i = 0; i < rows.size(); ++i) M.set_row(i, rows[i]);
  return M;
}

void axpy(const Fp& F, Vec& y, uint32_t a, const Vec& x) {
  if (!a) return;
  for (size_t i = 0; i < y.size(); ++i)
    if (x[i]) y[i] = F.add(y[i], F.mul(a, x[i]));
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](uint32_t x) { return x == 0; });
}

namespace {

inline void eliminate_row(const Fp& F, uint32_t* dst, const uint32_t* src, uint32_t f, size_t from, size_t n) {
  const uint64_t p = F.p();
  const uint64_t m = p - f;
  for (size_t j = from; j < n; ++j)
    if (src[j]) dst[j] = static_cast<uint32_t>((dst[j] + m * src[j]) % p);
}

template <bool Parallel>
std::vector<size_t> rref_impl(const Fp& F, Mat& A) {
  std::vector<size_t> piv;
  const size_t R = A.rows(), C = A.cols();
  size_t r = 0;
  for (size_t c = 0; c < C && r < R; ++c) {
    size_t sel = r;
    while (sel < R && A(sel, c) == 0) ++sel;
    if (sel == R) continue;
    if (sel != r)
      for (size_t j = 0; j < C; ++j) std::swap(A(sel, j), A(r, j));
    uint32_t iv = F.inv(A(r, c));
    uint32_t* pr = A.row(r);
    for (size_t j = c; j < C; ++j) pr[j] = F.mul(pr[j], iv);
    const long long RR = static_cast<long long>(R);
    if constexpr (Parallel) {
#pragma omp parallel for schedule(static) if (R * (C - c) > 1 << 15)
      for (long long i = 0; i < RR; ++i) {
        if (static_cast<size_t>(i) == r) continue;
        uint32_t f = A(i, c);
        if (f) eliminate_row(F, A.row(i), pr, f, c, C);
      }
    } else {
      for (long long i = 0; i < RR; ++i) {
        if (static_cast<size_t>(i) == r) continue;
        uint32_t f = A(i, c);
        if (f) eliminate_row(F, A.row(i), pr, f, c, C);
      }
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

}  // namespace

std::vector<size_t> rref(const Fp& F, Mat& A) { return rref_impl<false>(F, A); }
std::vector<size_t> rref_parallel(const Fp& F, Mat& A) { return rref_impl<true>(F, A); }

size_t rank(const Fp& F, Mat A) { return rref(F, A).size(); }

Mat nullspace(const Fp& F, const Mat& A) {
  Mat R = A;
  auto piv = rref(F, R);
  const size_t n = A.cols();
  std::vector<char> is_piv(n, 0);
  for (auto c : piv) is_piv[c] = 1;
  Mat K(n - piv.size(), n);
  size_t k = 0;
  for (size_t f = 0; f < n; ++f) {
    if (is_piv[f]) continue;
    K(k, f) = 1;
    for (size_t i = 0; i < piv.size(); ++i) K(k, piv[i]) = F.neg(R(i, f));
    ++k;
  }
  return K;
}

std::optional<Vec> solve(const Fp& F, const Mat& A, const Vec& b) {
  Mat Aug(A.rows(), A.cols() + 1);
  for (size_t i = 0; i < A.rows(); ++i) {
    std::copy(A.row(i), A.row(i) + A.cols(), Aug.row(i));
    Aug(i, A.cols()) = b[i];
  }
  auto piv = rref(F, Aug);
  if (!piv.empty() && piv.back() == A.cols()) return std::nullopt;
  Vec x(A.cols(), 0);
  for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = Aug(i, A.cols());
  return x;
}

std::optional<Mat> inverse(const Fp& F, const Mat& A) {
  const size_t n = A.rows();
  if (A.cols() != n) throw std::invalid_argument("inverse: not square");
  if (n == 0) return Mat(0, 0);
  Mat Aug(n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    std::copy(A.row(i), A.row(i) + n, Aug.row(i));
    Aug(i, n + i) = 1;
  }
  auto piv = rref(F, Aug);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  Mat Inv(n, n);
  for (size_t i = 0; i < n; ++i) std::copy(Aug.row(i) + n, Aug.row(i) + 2 * n, Inv.row(i));
  return Inv;
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const Fp& F, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = F.add(c[i + j], F.mul(a[i], b[j]));
  trim(c);
  return c;
}

Poly poly_sub(const Fp& F, const Poly& a, const Poly& b) {
  Poly c(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) c[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) c[i] = F.sub(c[i], b[i]);
  trim(c);
  return c;
}

namespace {
std::pair<Poly, Poly> divmod(const Fp& F, Poly a, const Poly& m) {
  if (m.empty()) throw std::domain_error("poly division by zero");
  trim(a);
  if (a.size() < m.size()) return {{}, a};
  Poly q(a.size() - m.size() + 1, 0);
  uint32_t il = F.inv(m.back());
  for (size_t k = a.size(); k-- >= m.size();) {
    uint32_t c = F.mul(a[k], il);
    q[k - m.size() + 1] = c;
    if (c)
      for (size_t j = 0; j < m.size(); ++j) {
        size_t idx = k - m.size() + 1 + j;
        a[idx] = F.sub(a[idx], F.mul(c, m[j]));
      }
    if (k == 0) break;
  }
  trim(a);
  trim(q);
  return {q, a};
}
}  // namespace

Poly poly_mod(const Fp& F, Poly a, const Poly& m) { return divmod(F, std::move(a), m).second; }
Poly poly_div(const Fp& F, Poly a, const Poly& m) { return divmod(F, std::move(a), m).first; }

Poly poly_gcd(const Fp& F, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    uint32_t il = F.inv(a.back());
    for (auto& x : a) x = F.mul(x, il);
  }
  return a;
}

Poly poly_powmod(const Fp& F, Poly base, uint64_t e, const Poly& m) {
  Poly r{1};
  r = poly_mod(F, r, m);
  base = poly_mod(F, base, m);
  while (e) {
    if (e & 1) r = poly_mod(F, poly_mul(F, r, base), m);
    base = poly_mod(F, poly_mul(F, base, base), m);
    e >>= 1;
  }
  return r;
}

Poly poly_derivative(const Fp& F, const Poly& a) {
  Poly d;
  for (size_t i = 1; i < a.size(); ++i) d.push_back(F.mul(a[i], F.from(static_cast<int64_t>(i))));
  trim(d);
  return d;
}

Mat poly_eval(const Fp& F, const Poly& a, const Mat& A) {
  const size_t n = A.rows();
  Mat R(n, n);
  for (size_t k = a.size(); k-- > 0;) {
    R = mul(F, R, A);
    for (size_t i = 0; i < n; ++i) R(i, i) = F.add(R(i, i), a[k]);
  }
  return R;
}

Poly charpoly(const Fp& F, const Mat& A) {
  const size_t n = A.rows();
  Mat H = A;
  // Reduce to upper Hessenberg form by similarity.
  for (size_t j = 0; j + 2 < n; ++j) {
    size_t sel = j + 1;
    while (sel < n && H(sel, j) == 0) ++sel;
    if (sel == n) continue;
    if (sel != j + 1) {
      for (size_t c = 0; c < n; ++c) std::swap(H(sel, c), H(j + 1, c));
      for (size_t r = 0; r < n; ++r) std::swap(H(r, sel), H(r, j + 1));
    }
    uint32_t iv = F.inv(H(j + 1, j));
    for (size_t k = j + 2; k < n; ++k) {
      uint32_t u = F.mul(H(k, j), iv);
      if (!u) continue;
      for (size_t c = 0; c < n; ++c) H(k, c) = F.sub(H(k, c), F.mul(u, H(j + 1, c)));
      for (size_t r = 0; r < n; ++r) H(r, j + 1) = F.add(H(r, j + 1), F.mul(u, H(r, k)));
    }
  }
  std::vector<Poly> p(n + 1);
  p[0] = {1};
  for (size_t m = 0; m < n; ++m) {
    Poly xm{F.neg(H(m, m)), 1};
    Poly next = poly_mul(F, xm, p[m]);
    uint32_t prod = 1;
    for (size_t i = m; i-- > 0;) {
      prod = F.mul(prod, H(i + 1, i));
      uint32_t c = F.mul(H(i, m), prod);
      if (!c) continue;
      Poly t = p[i];
      for (auto& x : t) x = F.mul(x, c);
      next = poly_sub(F, next, t);
    }
    p[m + 1] = next;
  }
  return p[n];
}

Vec RowSpace::reduce(Vec v) const {
  for (size_t i = 0; i < rows_.size(); ++i) {
    uint32_t c = v[piv_[i]];
    if (c) axpy(F_, v, F_.neg(c), rows_[i]);
  }
  return v;
}

bool RowSpace::contains(const Vec& v) const { return is_zero(reduce(v)); }

bool RowSpace::insert(const Vec& v0) {
  Vec v = v0;
  Vec comb;
  if (track_) {
    comb.assign(accepted_.size() + 1, 0);
    comb[accepted_.size()] = 1;
  }
  for (size_t i = 0; i < rows_.size(); ++i) {
    uint32_t c = v[piv_[i]];
    if (!c) continue;
    uint32_t m = F_.neg(c);
    axpy(F_, v, m, rows_[i]);
    if (track_)
      for (size_t k = 0; k < comb_[i].size(); ++k) comb[k] = F_.add(comb[k], F_.mul(m, comb_[i][k]));
  }
  size_t p = 0;
  while (p < n_ && v[p] == 0) ++p;
  if (p == n_) return false;
  uint32_t iv = F_.inv(v[p]);
  for (auto& x : v) x = F_.mul(x, iv);
  if (track_) {
    for (auto& x : comb) x = F_.mul(x, iv);
    for (auto& c : comb_) c.resize(accepted_.size() + 1, 0);
  }
  for (size_t i = 0; i < rows_.size(); ++i) {
    uint32_t c = rows_[i][p];
    if (!c) continue;
    uint32_t m = F_.neg(c);
    axpy(F_, rows_[i], m, v);
    if (track_)
      for (size_t k = 0; k < comb.size(); ++k) comb_[i][k] = F_.add(comb_[i][k], F_.mul(m, comb[k]));
  }
  // Keep rows sorted by pivot column.
  size_t pos = std::lower_bound(piv_.begin(), piv_.end(), p) - piv_.begin();
  rows_.insert(rows_.begin() + pos, std::move(v));
  piv_.insert(piv_.begin() + pos, p);
  if (track_) {
    comb_.insert(comb_.begin() + pos, std::move(comb));
    accepted_.push_back(v0);
  }
  return true;
}

std::optional<Vec> RowSpace::coords(const Vec& v) const {
  if (!track_) throw std::logic_error("RowSpace::coords requires tracking");
  Vec r = v;
  Vec c(accepted_.size(), 0);
  for (size_t i = 0; i < rows_.size(); ++i) {
    uint32_t a = r[piv_[i]];
    if (!a) continue;
    axpy(F_, r, F_.neg(a), rows_[i]);
    for (size_t k = 0; k < comb_[i].size(); ++k) c[k] = F_.add(c[k], F_.mul(a, comb_[i][k]));
  }
  if (!is_zero(r)) return std::nullopt;
  return c;
}

std::vector<size_t> RowSpace::free_columns() const {
  std::vector<size_t> out;
  size_t k = 0;
  for (size_t j = 0; j < n_; ++j) {
    if (k < piv_.size() && piv_[k] == j) {
      ++k;
      continue;
    }
    out.push_back(j);
  }
  return out;
}

}  // namespace mkd
