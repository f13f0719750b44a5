#include "mkd/phimod.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace mkd {

namespace qmat {

QMatrix zeros(size_t r, size_t c) { return QMatrix(r, std::vector<Rational>(c, Rational(0))); }

QMatrix identity(size_t n) {
  QMatrix I = zeros(n, n);
  for (size_t i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

QMatrix from_int(const std::vector<std::vector<long long>>& a) {
  QMatrix A;
  for (const auto& row : a) {
    std::vector<Rational> r;
    for (long long x : row) r.emplace_back(x);
    A.push_back(std::move(r));
  }
  return A;
}

static size_t ncols(const QMatrix& A) { return A.empty() ? 0 : A[0].size(); }

QMatrix mul(const QMatrix& A, const QMatrix& B) {
  const size_t n = A.size(), k = B.size(), m = ncols(B);
  if (ncols(A) != k && !(n == 0)) throw std::invalid_argument("qmat::mul: shape mismatch");
  QMatrix C = zeros(n, m);
  for (size_t i = 0; i < n; ++i)
    for (size_t t = 0; t < k; ++t) {
      if (A[i][t] == 0) continue;
      for (size_t j = 0; j < m; ++j)
        if (B[t][j] != 0) C[i][j] += A[i][t] * B[t][j];
    }
  return C;
}

QMatrix add(const QMatrix& A, const QMatrix& B) {
  QMatrix C = A;
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < A[i].size(); ++j) C[i][j] += B[i][j];
  return C;
}

QMatrix sub(const QMatrix& A, const QMatrix& B) {
  QMatrix C = A;
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < A[i].size(); ++j) C[i][j] -= B[i][j];
  return C;
}

QMatrix scale(const QMatrix& A, const Rational& c) {
  QMatrix C = A;
  for (auto& row : C)
    for (auto& x : row) x *= c;
  return C;
}

QMatrix transpose(const QMatrix& A) {
  QMatrix T = zeros(ncols(A), A.size());
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < A[i].size(); ++j) T[j][i] = A[i][j];
  return T;
}

QMatrix hcat(const QMatrix& A, const QMatrix& B) {
  if (A.empty()) return B;
  if (B.empty()) return A;
  QMatrix C = A;
  for (size_t i = 0; i < C.size(); ++i) C[i].insert(C[i].end(), B[i].begin(), B[i].end());
  return C;
}

QMatrix columns(const QMatrix& A, size_t from, size_t to) {
  QMatrix C = zeros(A.size(), to - from);
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = from; j < to; ++j) C[i][j - from] = A[i][j];
  return C;
}

// Gauss-Jordan on [A | B]; returns pivot columns of A.
static std::vector<size_t> reduce(QMatrix& A, QMatrix* B) {
  const size_t n = A.size(), m = ncols(A);
  std::vector<size_t> piv;
  size_t r = 0;
  for (size_t c = 0; c < m && r < n; ++c) {
    size_t p = r;
    while (p < n && A[p][c] == 0) ++p;
    if (p == n) continue;
    std::swap(A[p], A[r]);
    if (B) std::swap((*B)[p], (*B)[r]);
    Rational inv = 1 / A[r][c];
    for (auto& x : A[r]) x *= inv;
    if (B)
      for (auto& x : (*B)[r]) x *= inv;
    for (size_t i = 0; i < n; ++i) {
      if (i == r || A[i][c] == 0) continue;
      Rational f = A[i][c];
      for (size_t j = c; j < m; ++j) A[i][j] -= f * A[r][j];
      if (B)
        for (size_t j = 0; j < (*B)[i].size(); ++j) (*B)[i][j] -= f * (*B)[r][j];
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

std::optional<QMatrix> inverse(const QMatrix& A) {
  QMatrix M = A, I = identity(A.size());
  if (reduce(M, &I).size() != A.size()) return std::nullopt;
  return I;
}

Rational det(const QMatrix& A) {
  QMatrix M = A;
  const size_t n = M.size();
  Rational d = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && M[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(M[p], M[c]);
      d = -d;
    }
    d *= M[c][c];
    for (size_t i = c + 1; i < n; ++i) {
      if (M[i][c] == 0) continue;
      Rational f = M[i][c] / M[c][c];
      for (size_t j = c; j < n; ++j) M[i][j] -= f * M[c][j];
    }
  }
  return d;
}

size_t rank(const QMatrix& A) {
  QMatrix M = A;
  return reduce(M, nullptr).size();
}

bool is_zero(const QMatrix& A) {
  for (const auto& row : A)
    for (const auto& x : row)
      if (x != 0) return false;
  return true;
}

std::optional<QMatrix> solve(const QMatrix& A, const QMatrix& B) {
  QMatrix M = A, R = B;
  auto piv = reduce(M, &R);
  const size_t m = ncols(A);
  for (size_t i = piv.size(); i < R.size(); ++i)
    for (const auto& x : R[i])
      if (x != 0) return std::nullopt;
  QMatrix X = zeros(m, ncols(B));
  for (size_t k = 0; k < piv.size(); ++k) X[piv[k]] = R[k];
  return X;
}

std::string str(const QMatrix& A) {
  std::ostringstream os;
  for (const auto& row : A) {
    os << "[";
    for (size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << row[j];
    os << "]\n";
  }
  return os.str();
}

}  // namespace qmat

int valuation(const BigInt& x, uint64_t ell) {
  if (x == 0) return INT_MAX;
  BigInt y = x < 0 ? BigInt(-x) : x;
  int v = 0;
  while (y % ell == 0) {
    y /= ell;
    ++v;
  }
  return v;
}

int valuation(const Rational& x, uint64_t ell) {
  if (x == 0) return INT_MAX;
  return valuation(BigInt(numerator(x)), ell) - valuation(BigInt(denominator(x)), ell);
}

bool is_integral(const Rational& x, uint64_t ell) { return BigInt(denominator(x)) % ell != 0; }

bool is_integral(const QMatrix& A, uint64_t ell) {
  for (const auto& row : A)
    for (const auto& x : row)
      if (!is_integral(x, ell)) return false;
  return true;
}

namespace {

struct LocalSmith {
  std::vector<int> vals;
  QMatrix Linv;  // A = Linv * D * Rinv
};

// Minimal-valuation pivoting. Every multiplier used has non-negative
// valuation, so the accumulated transforms stay invertible over Z_(l).
LocalSmith local_smith(const QMatrix& A, uint64_t ell, bool track) {
  const size_t n = A.size(), m = A.empty() ? 0 : A[0].size();
  QMatrix M = A;
  LocalSmith out;
  if (track) out.Linv = qmat::identity(n);
  for (size_t k = 0; k < std::min(n, m); ++k) {
    int best = INT_MAX;
    size_t bi = 0, bj = 0;
    for (size_t i = k; i < n; ++i)
      for (size_t j = k; j < m; ++j) {
        int v = valuation(M[i][j], ell);
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    if (best == INT_MAX) break;
    std::swap(M[bi], M[k]);
    if (track)
      for (auto& row : out.Linv) std::swap(row[bi], row[k]);
    for (auto& row : M) std::swap(row[bj], row[k]);
    const Rational piv = M[k][k];
    for (size_t i = k + 1; i < n; ++i) {
      if (M[i][k] == 0) continue;
      Rational f = M[i][k] / piv;
      for (size_t j = k; j < m; ++j) M[i][j] -= f * M[k][j];
      // Row op R_i -= f R_k on A means Linv gains column_k += f column_i.
      if (track)
        for (auto& row : out.Linv) row[k] += f * row[i];
    }
    for (size_t j = k + 1; j < m; ++j) M[k][j] = 0;
    out.vals.push_back(best);
  }
  return out;
}

BigInt ipow(const BigInt& b, unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

// Scale a rational vector by a unit of Z_(l) so that it becomes integral with
// content a power of l.
std::vector<Rational> normalize_column(std::vector<Rational> v, uint64_t ell) {
  BigInt den = 1;
  for (const auto& x : v) den = boost::multiprecision::lcm(den, BigInt(denominator(x)));
  BigInt g = 0;
  for (auto& x : v) {
    x *= den;
    g = boost::multiprecision::gcd(g, BigInt(numerator(x)));
  }
  if (g == 0) return v;
  while (g % ell == 0) g /= ell;
  for (auto& x : v) x /= g;
  return v;
}

}  // namespace

std::vector<int> local_smith_valuations(const QMatrix& A, uint64_t ell) { return local_smith(A, ell, false).vals; }

QMatrix local_column_basis(const QMatrix& A, uint64_t ell) {
  auto S = local_smith(A, ell, true);
  const size_t n = A.size();
  QMatrix B = qmat::zeros(n, S.vals.size());
  for (size_t k = 0; k < S.vals.size(); ++k) {
    std::vector<Rational> col(n);
    Rational lk = Rational(ipow(BigInt(ell), static_cast<unsigned>(S.vals[k])));
    for (size_t i = 0; i < n; ++i) col[i] = S.Linv[i][k] * lk;
    col = normalize_column(std::move(col), ell);
    for (size_t i = 0; i < n; ++i) B[i][k] = col[i];
  }
  return B;
}

WeightSupport weight_sum_rule(const WeightSupport& I, const WeightSupport& J) {
  WeightSupport out;
  for (int i : I.exponents)
    for (int j : J.exponents) out.exponents.insert(i + j);
  return out;
}

PhiModule::PhiModule(QMatrix phi, uint64_t ell, BigInt q, int precision)
    : phi_(std::move(phi)), ell_(ell), q_(std::move(q)), precision_(precision) {
  for (const auto& row : phi_)
    if (row.size() != phi_.size()) throw std::invalid_argument("PhiModule: phi must be square");
  if (ell_ < 2) throw std::invalid_argument("PhiModule: ell must be a prime");
  for (uint64_t d = 2; d * d <= ell_; ++d)
    if (ell_ % d == 0) throw std::invalid_argument("PhiModule: ell must be a prime");
  if (precision_ < 1) throw std::invalid_argument("PhiModule: precision must be positive");
  if (q_ % ell_ == 0) throw std::invalid_argument("PhiModule: q must be a unit mod ell");
  if (!is_integral(phi_, ell_)) throw std::invalid_argument("PhiModule: phi has entries with ell in the denominator");
  if (!phi_.empty() && valuation(qmat::det(phi_), ell_) != 0)
    throw std::invalid_argument("PhiModule: det(phi) divisible by ell, phi is not an automorphism");
}

Rational PhiModule::q_power(int i) const {
  Rational r = Rational(ipow(q_, static_cast<unsigned>(std::abs(i))));
  return i >= 0 ? r : Rational(1) / r;
}

namespace {

QMatrix matpow(const QMatrix& A, size_t e) {
  QMatrix R = qmat::identity(A.size());
  for (size_t i = 0; i < e; ++i) R = qmat::mul(R, A);
  return R;
}

bool nilpotent(const QMatrix& A) { return qmat::is_zero(matpow(A, A.size())); }

QMatrix shift(const QMatrix& A, const Rational& lambda) {
  QMatrix B = A;
  for (size_t i = 0; i < B.size(); ++i) B[i][i] -= lambda;
  return B;
}

uint64_t residue(const Rational& x, uint64_t ell) {
  BigInt L(ell);
  BigInt n = BigInt(numerator(x)) % L, d = BigInt(denominator(x)) % L;
  if (n < 0) n += L;
  if (d < 0) d += L;
  BigInt inv = 1, base = d;
  for (uint64_t e = ell - 2; e; e >>= 1) {
    if (e & 1) inv = inv * base % L;
    base = base * base % L;
  }
  return static_cast<uint64_t>(BigInt(n * inv % L));
}

// Polynomials over Q, coefficients low to high.
using QPoly = std::vector<Rational>;

void ptrim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly pmul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly c(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  ptrim(c);
  return c;
}

QPoly psub(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  ptrim(a);
  return a;
}

std::pair<QPoly, QPoly> pdivmod(QPoly a, const QPoly& b) {
  ptrim(a);
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  if (a.size() < b.size()) return {{}, a};
  QPoly q(a.size() - b.size() + 1, Rational(0));
  for (size_t k = q.size(); k-- > 0;) {
    Rational c = a[k + b.size() - 1] / b.back();
    q[k] = c;
    for (size_t j = 0; j < b.size(); ++j) a[k + j] -= c * b[j];
  }
  a.resize(b.size() - 1);
  ptrim(a);
  ptrim(q);
  return {q, a};
}

// Returns s with s*a = 1 mod b, assuming gcd(a, b) = 1.
QPoly pinvmod(const QPoly& a, const QPoly& b) {
  QPoly r0 = b, r1 = pdivmod(a, b).second, s0 = {}, s1 = {Rational(1)};
  while (!r1.empty()) {
    auto [q, r] = pdivmod(r0, r1);
    QPoly s = psub(s0, pmul(q, s1));
    r0 = r1;
    r1 = r;
    s0 = s1;
    s1 = s;
  }
  if (r0.size() != 1) throw std::logic_error("pinvmod: not coprime");
  Rational c = r0[0];
  for (auto& x : s0) x /= c;
  return s0;
}

Rational peval(const QPoly& p, const Rational& x) {
  Rational r = 0;
  for (size_t k = p.size(); k-- > 0;) r = r * x + p[k];
  return r;
}

QMatrix peval(const QPoly& p, const QMatrix& A) {
  QMatrix R = qmat::zeros(A.size(), A.size());
  for (size_t k = p.size(); k-- > 0;) {
    R = qmat::mul(R, A);
    for (size_t i = 0; i < A.size(); ++i) R[i][i] += p[k];
  }
  return R;
}

// Faddeev-LeVerrier; monic, low to high.
QPoly charpoly(const QMatrix& A) {
  const size_t n = A.size();
  QPoly c(n + 1, Rational(0));
  c[n] = 1;
  QMatrix M = qmat::zeros(n, n);
  for (size_t k = 1; k <= n; ++k) {
    M = qmat::mul(A, M);
    for (size_t i = 0; i < n; ++i) M[i][i] += c[n - k + 1];
    QMatrix AM = qmat::mul(A, M);
    Rational tr = 0;
    for (size_t i = 0; i < n; ++i) tr += AM[i][i];
    c[n - k] = -tr / Rational(static_cast<long long>(k));
  }
  return c;
}

std::vector<BigInt> divisors(BigInt n, size_t limit) {
  if (n < 0) n = -n;
  std::vector<BigInt> out;
  for (BigInt d = 1; d * d <= n; ++d) {
    if (out.size() > limit) return {};
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  return out;
}

struct RootScan {
  std::vector<std::pair<Rational, int>> roots;  // root, multiplicity
  QPoly rest;
  bool complete = true;
};

// Rational roots: q-powers first, then the rational root theorem on the
// integer-scaled remainder when its coefficients are small enough.
RootScan rational_roots(QPoly chi, const PhiModule& M) {
  RootScan out;
  auto strip = [&](const Rational& r) {
    int mult = 0;
    while (chi.size() > 1 && peval(chi, r) == 0) {
      chi = pdivmod(chi, QPoly{-r, Rational(1)}).first;
      ++mult;
    }
    if (mult) out.roots.emplace_back(r, mult);
  };
  for (int i = -64; i <= 64 && chi.size() > 1; ++i) strip(M.q_power(i));
  if (chi.size() > 1) {
    BigInt den = 1;
    for (const auto& x : chi) den = boost::multiprecision::lcm(den, BigInt(denominator(x)));
    const BigInt a0 = BigInt(numerator(Rational(chi.front() * den)));
    const BigInt an = BigInt(numerator(Rational(chi.back() * den)));
    const BigInt bound = BigInt(1) << 40;
    if (a0 == 0) {
      strip(Rational(0));
    } else if (abs(a0) < bound && abs(an) < bound) {
      for (const auto& p : divisors(a0, 100000))
        for (const auto& q : divisors(an, 100000)) {
          strip(Rational(p, q));
          strip(Rational(BigInt(-p), q));
        }
    } else {
      out.complete = false;
    }
  }
  out.rest = chi;
  return out;
}

// Polynomials over F_l as coefficient vectors, low to high.
using FPoly = std::vector<uint64_t>;

void ftrim(FPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

uint64_t fpow(uint64_t b, uint64_t e, uint64_t l) {
  unsigned __int128 r = 1, x = b % l;
  for (; e; e >>= 1) {
    if (e & 1) r = r * x % l;
    x = x * x % l;
  }
  return static_cast<uint64_t>(r);
}

FPoly fmod_poly(FPoly a, const FPoly& b, uint64_t l) {
  ftrim(a);
  const uint64_t inv = fpow(b.back(), l - 2, l);
  while (a.size() >= b.size()) {
    uint64_t c = static_cast<uint64_t>((unsigned __int128)a.back() * inv % l);
    size_t off = a.size() - b.size();
    for (size_t j = 0; j < b.size(); ++j)
      a[off + j] = (a[off + j] + l - static_cast<uint64_t>((unsigned __int128)c * b[j] % l)) % l;
    ftrim(a);
  }
  return a;
}

FPoly fgcd(FPoly a, FPoly b, uint64_t l) {
  ftrim(a);
  ftrim(b);
  while (!b.empty()) {
    FPoly r = fmod_poly(a, b, l);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

FPoly reduce_mod(const QPoly& p, uint64_t l) {
  FPoly f;
  for (const auto& c : p) f.push_back(residue(c, l));
  ftrim(f);
  return f;
}

uint64_t feval(const FPoly& p, uint64_t x, uint64_t l) {
  unsigned __int128 r = 0;
  for (size_t k = p.size(); k-- > 0;) r = (r * x + p[k]) % l;
  return static_cast<uint64_t>(r);
}

// Modular arithmetic on BigInt residues mod l^N.
struct ModRing {
  BigInt mod;
  BigInt reduce(const BigInt& x) const {
    BigInt r = x % mod;
    return r < 0 ? BigInt(r + mod) : r;
  }
  BigInt of(const Rational& x) const {
    BigInt d = reduce(BigInt(denominator(x)));
    return reduce(BigInt(numerator(x)) * inverse(d));
  }
  BigInt inverse(const BigInt& a) const {
    BigInt r0 = mod, r1 = reduce(a), s0 = 0, s1 = 1;
    while (r1 != 0) {
      BigInt q = r0 / r1;
      BigInt t = r0 - q * r1;
      r0 = r1;
      r1 = t;
      t = s0 - q * s1;
      s0 = s1;
      s1 = t;
    }
    if (r0 != 1) throw std::domain_error("not a unit modulo l^N");
    return reduce(s0);
  }
};

std::string rational_label(const Rational& r) {
  std::ostringstream os;
  os << "lambda=" << r;
  return os.str();
}

}  // namespace

bool has_weights_from(const PhiModule& M, const WeightSupport& I) {
  QMatrix P = qmat::identity(M.rank());
  for (int i : I.exponents) P = qmat::mul(P, shift(M.phi(), M.q_power(i)));
  if (I.exponents.empty()) return M.rank() == 0;
  return nilpotent(P);
}

bool weights_separated(const WeightSupport& I, uint64_t ell, const BigInt& q) {
  std::set<uint64_t> seen;
  const uint64_t qb = static_cast<uint64_t>(BigInt((q % ell + ell) % ell));
  for (int i : I.exponents) {
    uint64_t r = i >= 0 ? fpow(qb, static_cast<uint64_t>(i), ell) : fpow(fpow(qb, ell - 2, ell), static_cast<uint64_t>(-i), ell);
    if (!seen.insert(r).second) return false;
  }
  return true;
}

PhiModule tensor(const PhiModule& M, const PhiModule& N) {
  if (M.ell() != N.ell() || M.q() != N.q()) throw std::invalid_argument("tensor: modules over different (ell, q)");
  const size_t a = M.rank(), b = N.rank();
  QMatrix K = qmat::zeros(a * b, a * b);
  for (size_t i = 0; i < a; ++i)
    for (size_t j = 0; j < a; ++j)
      for (size_t k = 0; k < b; ++k)
        for (size_t l = 0; l < b; ++l) K[i * b + k][j * b + l] = M.phi()[i][j] * N.phi()[k][l];
  return PhiModule(std::move(K), M.ell(), M.q(), std::min(M.precision(), N.precision()));
}

PhiModule restrict_to(const PhiModule& M, const QMatrix& basis) {
  auto X = qmat::solve(basis, qmat::mul(M.phi(), basis));
  if (!X || qmat::rank(basis) != (basis.empty() ? 0 : basis[0].size()))
    throw std::invalid_argument("restrict_to: columns do not span a phi-stable sublattice of full column rank");
  return PhiModule(*X, M.ell(), M.q(), M.precision());
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Decomposable: return "decomposable";
    case Verdict::Indecomposable: return "indecomposable";
    case Verdict::Undecidable: return "undecidable";
  }
  return "?";
}

Decomposition decompose(const PhiModule& M) {
  Decomposition D;
  const size_t n = M.rank();
  const uint64_t ell = M.ell();
  if (n == 0) {
    D.verdict = Verdict::Decomposable;
    return D;
  }
  QPoly chi = charpoly(M.phi());
  RootScan scan = rational_roots(chi, M);

  // Pieces of the characteristic polynomial that are pairwise coprime over Q.
  std::vector<QPoly> pieces;
  for (const auto& [r, m] : scan.roots) {
    QPoly p = {Rational(1)};
    for (int k = 0; k < m; ++k) p = pmul(p, QPoly{-r, Rational(1)});
    pieces.push_back(p);
  }
  const bool has_rest = scan.rest.size() > 1;
  if (has_rest) pieces.push_back(scan.rest);

  std::vector<QMatrix> idem;
  for (size_t k = 0; k < pieces.size(); ++k) {
    if (pieces.size() == 1) {
      idem.push_back(qmat::identity(n));
      break;
    }
    QPoly co = pdivmod(chi, pieces[k]).first;
    QPoly e = pdivmod(pmul(pinvmod(co, pieces[k]), co), chi).second;
    idem.push_back(peval(e, M.phi()));
  }
  for (size_t k = 0; k < idem.size(); ++k)
    if (!is_integral(idem[k], ell)) {
      D.verdict = Verdict::Indecomposable;
      D.reason = "generalized eigenspace projector is not l-integral";
      return D;
    }

  for (size_t k = 0; k < scan.roots.size(); ++k) {
    EigenSummand s;
    const Rational& lam = scan.roots[k].first;
    s.eigenvalue = lam;
    s.residue = residue(lam, ell);
    for (int i = -64; i <= 64; ++i)
      if (M.q_power(i) == lam) {
        s.exponent = i;
        break;
      }
    s.label = s.exponent ? "q^" + std::to_string(*s.exponent) : rational_label(lam);
    s.basis = local_column_basis(idem[k], ell);
    D.summands.push_back(std::move(s));
  }

  if (has_rest) {
    // Remaining eigenvalues are irrational. Split them l-adically when the
    // reduction is squarefree, coprime to the rational residues and splits
    // into linear factors; an irreducible factor of degree > 1 means the
    // eigenvalues do not lie in O.
    FPoly g = reduce_mod(scan.rest, ell);
    FPoly dg;
    for (size_t k = 1; k < g.size(); ++k) dg.push_back(static_cast<uint64_t>((unsigned __int128)g[k] * k % ell));
    ftrim(dg);
    FPoly rat = {1};
    for (const auto& s : D.summands) {
      FPoly lin = {(ell - s.residue) % ell, 1};
      FPoly prod(rat.size() + 1, 0);
      for (size_t i = 0; i < rat.size(); ++i)
        for (size_t j = 0; j < 2; ++j) prod[i + j] = (prod[i + j] + static_cast<uint64_t>((unsigned __int128)rat[i] * lin[j] % ell)) % ell;
      rat = prod;
    }
    if (!scan.complete) {
      D.reason = "rational root search incomplete (coefficients too large)";
      return D;
    }
    if (fgcd(g, dg, ell).size() > 1 || fgcd(g, rat, ell).size() > 1) {
      D.reason = "eigenvalue residues collide modulo l; lifting needs more than simple Hensel steps";
      return D;
    }
    if (ell > 1000000) {
      D.reason = "residue root search skipped for large l";
      return D;
    }
    std::vector<uint64_t> rts;
    for (uint64_t x = 0; x < ell; ++x)
      if (feval(g, x, ell) == 0) rts.push_back(x);
    if (rts.size() + 1 != g.size()) {
      D.verdict = Verdict::Indecomposable;
      D.reason = "some eigenvalues lie in a proper unramified extension of O";
      return D;
    }
    // Newton lifting to l^N, then approximate idempotents on the rest piece.
    ModRing R{boost::multiprecision::pow(BigInt(ell), static_cast<unsigned>(M.precision()))};
    std::vector<BigInt> lifted;
    QPoly gd;
    for (size_t k = 1; k < scan.rest.size(); ++k) gd.push_back(scan.rest[k] * Rational(static_cast<long long>(k)));
    for (uint64_t r0 : rts) {
      BigInt r = r0;
      for (int it = 0; it < 64; ++it) {
        BigInt fv = R.of(peval(scan.rest, Rational(r))), dv = R.of(peval(gd, Rational(r)));
        if (fv == 0) break;
        r = R.reduce(r - fv * R.inverse(dv));
      }
      lifted.push_back(r);
    }
    const QMatrix& E = idem.back();
    for (size_t a = 0; a < lifted.size(); ++a) {
      QMatrix P = E;
      for (size_t b = 0; b < lifted.size(); ++b) {
        if (b == a) continue;
        BigInt c = R.inverse(lifted[a] - lifted[b]);
        P = qmat::scale(qmat::mul(P, shift(M.phi(), Rational(lifted[b]))), Rational(c));
      }
      // Rank-1 image mod l^N: pick a column containing a unit.
      std::optional<size_t> col;
      for (size_t j = 0; j < n && !col; ++j)
        for (size_t i = 0; i < n; ++i)
          if (R.of(P[i][j]) % ell != 0) {
            col = j;
            break;
          }
      if (!col) {
        D.reason = "approximate idempotent vanishes mod l";
        return D;
      }
      EigenSummand s;
      s.residue = rts[a];
      s.label = "residue " + std::to_string(rts[a]) + " mod " + std::to_string(ell);
      s.exact = false;
      s.basis = qmat::zeros(n, 1);
      for (size_t i = 0; i < n; ++i) s.basis[i][0] = Rational(R.of(P[i][*col]));
      D.summands.push_back(std::move(s));
    }
  }

  for (const auto& s : D.summands) D.assembled = qmat::hcat(D.assembled, s.basis);
  if (auto inv = qmat::inverse(D.assembled)) D.conjugated = qmat::mul(*inv, qmat::mul(M.phi(), D.assembled));
  D.verdict = Verdict::Decomposable;
  return D;
}

bool verify_decomposition(const PhiModule& M, const Decomposition& D) {
  if (D.verdict != Verdict::Decomposable) return false;
  const size_t n = M.rank();
  if (n == 0) return D.summands.empty();
  bool exact = std::all_of(D.summands.begin(), D.summands.end(), [](const EigenSummand& s) { return s.exact; });
  if (D.assembled.size() != n || D.assembled[0].size() != n) return false;
  const uint64_t ell = M.ell();
  if (!exact) {
    // Approximate summands: check modulo l^N only.
    ModRing R{boost::multiprecision::pow(BigInt(ell), static_cast<unsigned>(M.precision()))};
    if (valuation(qmat::det(D.assembled), ell) != 0) return false;
    auto inv = qmat::inverse(D.assembled);
    if (!inv) return false;
    QMatrix C = qmat::mul(*inv, qmat::mul(M.phi(), D.assembled));
    size_t off = 0;
    for (const auto& s : D.summands) {
      size_t w = s.basis[0].size();
      for (size_t i = 0; i < n; ++i)
        for (size_t j = off; j < off + w; ++j)
          if ((i < off || i >= off + w) && R.of(C[i][j]) != 0) return false;
      off += w;
    }
    return true;
  }
  if (valuation(qmat::det(D.assembled), ell) != 0) return false;
  auto inv = qmat::inverse(D.assembled);
  if (!inv) return false;
  QMatrix C = qmat::mul(*inv, qmat::mul(M.phi(), D.assembled));
  if (!is_integral(C, ell)) return false;
  size_t off = 0;
  for (const auto& s : D.summands) {
    const size_t w = s.basis[0].size();
    for (size_t i = 0; i < n; ++i)
      for (size_t j = off; j < off + w; ++j)
        if ((i < off || i >= off + w) && C[i][j] != 0) return false;
    if (s.eigenvalue) {
      QMatrix blk = qmat::zeros(w, w);
      for (size_t i = 0; i < w; ++i)
        for (size_t j = 0; j < w; ++j) blk[i][j] = C[off + i][off + j];
      if (!nilpotent(shift(blk, *s.eigenvalue))) return false;
    }
    off += w;
  }
  return off == n;
}

SubQuotient stable_sub_quotient_split(const PhiModule& M, const QMatrix& sub_basis) {
  const size_t n = M.rank();
  const uint64_t ell = M.ell();
  if (sub_basis.size() != n) throw std::invalid_argument("stable_sub_quotient_split: basis has wrong row count");
  const size_t k = sub_basis.empty() ? 0 : sub_basis[0].size();
  if (qmat::rank(sub_basis) != k) throw std::invalid_argument("stable_sub_quotient_split: basis columns are dependent");
  if (!is_integral(sub_basis, ell)) throw std::invalid_argument("stable_sub_quotient_split: basis is not l-integral");
  // Stability: phi B = B X with X l-integral.
  auto X = qmat::solve(sub_basis, qmat::mul(M.phi(), sub_basis));
  if (!X || !is_integral(*X, ell)) throw std::invalid_argument("stable_sub_quotient_split: sublattice is not phi-stable");
  for (int v : local_smith_valuations(sub_basis, ell))
    if (v != 0)
      throw std::invalid_argument(
          "stable_sub_quotient_split: M/N has l-torsion; the quotient must be free over O for the splitting argument");
  // Complete to a basis of M with standard vectors.
  QMatrix full = sub_basis;
  std::vector<size_t> extra;
  for (size_t e = 0; e < n && full[0].size() < n; ++e) {
    QMatrix cand = full;
    for (size_t i = 0; i < n; ++i) cand[i].push_back(i == e ? Rational(1) : Rational(0));
    auto vals = local_smith_valuations(cand, ell);
    if (vals.size() == cand[0].size() && std::all_of(vals.begin(), vals.end(), [](int v) { return v == 0; })) {
      full = std::move(cand);
      extra.push_back(e);
    }
  }
  if (full.empty() || full[0].size() != n) throw std::logic_error("stable_sub_quotient_split: basis completion failed");
  QMatrix C = qmat::mul(*qmat::inverse(full), qmat::mul(M.phi(), full));
  QMatrix Cq = qmat::zeros(n - k, n - k);
  for (size_t i = k; i < n; ++i)
    for (size_t j = k; j < n; ++j) Cq[i - k][j - k] = C[i][j];
  PhiModule sub(*X, ell, M.q(), M.precision());
  PhiModule quo(Cq, ell, M.q(), M.precision());
  auto ds = decompose(sub);
  auto dq = decompose(quo);
  return SubQuotient{std::move(sub), std::move(quo), std::move(ds), std::move(dq)};
}

FreeCover free_cover(const Presentation& P, const WeightSupport& I, uint64_t ell, const BigInt& q, int precision) {
  const size_t g = P.generators;
  if (P.phi.size() != g) throw std::invalid_argument("free_cover: phi must act on the generators");
  const size_t r = P.relations.empty() ? 0 : P.relations[0].size();
  if (r && P.relations.size() != g)
    throw std::invalid_argument("free_cover: relations must have one row per generator");
  if (I.exponents.empty()) throw std::invalid_argument("free_cover: empty weight support");

  QMatrix Rel = r ? local_column_basis(P.relations, ell) : qmat::zeros(g, 0);
  const size_t rel_rank = Rel.empty() ? 0 : Rel[0].size();
  // phi must preserve the relation lattice.
  if (rel_rank) {
    auto Y = qmat::solve(Rel, qmat::mul(P.phi, Rel));
    if (!Y || !is_integral(*Y, ell)) throw std::invalid_argument("free_cover: phi does not preserve the relations");
  }

  // Minimal n with prod_i (phi - q^i)^n mapping the generators into the
  // relation lattice; torsion length plus free rank bounds it.
  auto qpow = [&](int i) {
    Rational r1 = Rational(boost::multiprecision::pow(q, static_cast<unsigned>(std::abs(i))));
    return i >= 0 ? r1 : Rational(1) / r1;
  };
  QMatrix prod1 = qmat::identity(g);
  for (int i : I.exponents) prod1 = qmat::mul(prod1, shift(P.phi, qpow(i)));
  int torsion_len = 0;
  for (int v : local_smith_valuations(Rel, ell)) torsion_len += v;
  const int bound = static_cast<int>(g) + torsion_len + 1;
  auto in_relations = [&](const QMatrix& A) {
    if (qmat::is_zero(A)) return true;
    if (!rel_rank) return false;
    auto Z = qmat::solve(Rel, A);
    return Z && is_integral(*Z, ell);
  };
  int nexp = 0;
  QMatrix pw = qmat::identity(g);
  while (!in_relations(pw)) {
    if (++nexp > bound) throw std::invalid_argument("free_cover: module does not have weights from the given support");
    pw = qmat::mul(pw, prod1);
  }

  FreeCover out{PhiModule(P.phi, ell, q, precision), qmat::identity(g), nexp, false, true};
  if (rel_rank == 0) {
    out.identity = true;
    return out;
  }

  // Companion matrix of m(X) = prod (X - q^i)^n acting on O[X]/m.
  QPoly m = {Rational(1)};
  for (int i : I.exponents)
    for (int k = 0; k < nexp; ++k) m = pmul(m, QPoly{-qpow(i), Rational(1)});
  const size_t d = m.size() - 1;
  QMatrix comp = qmat::zeros(d, d);
  for (size_t i = 1; i < d; ++i) comp[i][i - 1] = 1;
  for (size_t i = 0; i < d; ++i) comp[i][d - 1] = -m[i];

  // Greedy generators over O[phi] modulo l: pick standard generators whose
  // phi-orbits enlarge the image mod l together with the relations.
  auto rank_mod = [&](const QMatrix& A) {
    // rank over F_l of an l-integral matrix = number of zero valuations
    auto v = local_smith_valuations(A, ell);
    return static_cast<size_t>(std::count(v.begin(), v.end(), 0));
  };
  QMatrix span = Rel;
  size_t cur = rank_mod(span);
  std::vector<size_t> chosen;
  for (size_t e = 0; e < g && cur < g; ++e) {
    QMatrix orbit = qmat::zeros(g, d);
    std::vector<Rational> v(g, Rational(0));
    v[e] = 1;
    for (size_t k = 0; k < d; ++k) {
      for (size_t i = 0; i < g; ++i) orbit[i][k] = v[i];
      std::vector<Rational> w(g, Rational(0));
      for (size_t i = 0; i < g; ++i)
        for (size_t j = 0; j < g; ++j) w[i] += P.phi[i][j] * v[j];
      v = std::move(w);
    }
    QMatrix cand = qmat::hcat(span, orbit);
    size_t nr = rank_mod(cand);
    if (nr > cur) {
      span = std::move(cand);
      cur = nr;
      chosen.push_back(e);
      out.surjection = chosen.size() == 1 ? orbit : qmat::hcat(out.surjection, orbit);
    }
  }
  const size_t t = chosen.size();
  QMatrix phi_cover = qmat::zeros(t * d, t * d);
  for (size_t b = 0; b < t; ++b)
    for (size_t i = 0; i < d; ++i)
      for (size_t j = 0; j < d; ++j) phi_cover[b * d + i][b * d + j] = comp[i][j];
  out.cover = PhiModule(std::move(phi_cover), ell, q, precision);
  out.surjective_mod_ell = cur == g;
  return out;
}

}  // namespace mkd
