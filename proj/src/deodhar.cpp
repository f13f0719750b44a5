#include "mkd/deodhar.hpp"

#include <algorithm>
#include <bitset>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>

#include "mkd/linalg.hpp"

namespace mkd {

IntPolynomial IntPolynomial::constant(int64_t c) { return monomial(c, 0); }

IntPolynomial IntPolynomial::monomial(int64_t c, unsigned e) {
  IntPolynomial p;
  p.put(e, c);
  return p;
}

void IntPolynomial::put(unsigned e, int64_t c) {
  if (c == 0)
    c_.erase(e);
  else
    c_[e] = c;
}

int64_t IntPolynomial::coeff(unsigned e) const {
  auto it = c_.find(e);
  return it == c_.end() ? 0 : it->second;
}

int64_t IntPolynomial::eval(int64_t q) const {
  int64_t r = 0;
  for (auto [e, c] : c_) {
    int64_t t = c;
    for (unsigned k = 0; k < e; ++k) t *= q;
    r += t;
  }
  return r;
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
  IntPolynomial r = *this;
  for (auto [e, c] : o.c_) r.put(e, r.coeff(e) + c);
  return r;
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const {
  IntPolynomial r = *this;
  for (auto [e, c] : o.c_) r.put(e, r.coeff(e) - c);
  return r;
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
  IntPolynomial r;
  for (auto [e1, c1] : c_)
    for (auto [e2, c2] : o.c_) r.put(e1 + e2, r.coeff(e1 + e2) + c1 * c2);
  return r;
}

std::string IntPolynomial::str() const {
  if (c_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    auto [e, c] = *it;
    int64_t a = c < 0 ? -c : c;
    if (first)
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    first = false;
    std::string mono = e == 0 ? "" : e == 1 ? "q" : "q^" + std::to_string(e);
    if (e == 0)
      out += std::to_string(a);
    else if (a == 1)
      out += mono;
    else
      out += std::to_string(a) + "*" + mono;
  }
  return out;
}

namespace {

const IntPolynomial kQ = IntPolynomial::monomial(1, 1);
const IntPolynomial kQm1 = IntPolynomial::monomial(1, 1) - IntPolynomial::constant(1);

int default_descent(const WeylGroup& W, Element v) { return W.normal_form(v).back(); }

}  // namespace

RPolynomials::RPolynomials(std::shared_ptr<const WeylGroup> W) : W_(std::move(W)) {
  memo_.resize(W_->size() * W_->size());
}

IntPolynomial RPolynomials::operator()(Element u, Element v) const {
  const size_t key = static_cast<size_t>(v) * W_->size() + u;
  {
    std::shared_lock lk(mu_);
    if (memo_[key]) return *memo_[key];
  }
  IntPolynomial r;
  if (v == 0)
    r = IntPolynomial::constant(u == 0 ? 1 : 0);
  else
    r = via_descent(u, v, default_descent(*W_, v));
  std::unique_lock lk(mu_);
  if (!memo_[key]) memo_[key] = std::make_unique<IntPolynomial>(r);
  return *memo_[key];
}

IntPolynomial RPolynomials::via_descent(Element u, Element v, int s) const {
  const WeylGroup& W = *W_;
  if (!W.is_right_descent(v, s)) throw std::invalid_argument("via_descent: s is not a right descent of v");
  Element vs = W.mul_right(v, s), us = W.mul_right(u, s);
  if (W.length(us) < W.length(u)) return (*this)(us, vs);
  return kQm1 * (*this)(u, vs) + kQ * (*this)(us, vs);
}

IntPolynomial r_polynomial_with(const WeylGroup& W, Element u, Element v, const DescentChooser& choose) {
  if (v == 0) return IntPolynomial::constant(u == 0 ? 1 : 0);
  int s = choose(W, v);
  if (!W.is_right_descent(v, s)) throw std::invalid_argument("descent chooser returned a non-descent");
  Element vs = W.mul_right(v, s), us = W.mul_right(u, s);
  if (W.length(us) < W.length(u)) return r_polynomial_with(W, us, vs, choose);
  return kQm1 * r_polynomial_with(W, u, vs, choose) + kQ * r_polynomial_with(W, us, vs, choose);
}

namespace {

template <bool Parallel>
std::vector<std::vector<IntPolynomial>> build_table(const WeylGroup& W) {
  const size_t N = W.size();
  std::vector<std::vector<IntPolynomial>> R(N, std::vector<IntPolynomial>(N));
  R[0][0] = IntPolynomial::constant(1);
  std::vector<std::vector<Element>> levels(W.length(W.longest()) + 1);
  for (Element v = 0; v < N; ++v) levels[W.length(v)].push_back(v);
  for (size_t k = 1; k < levels.size(); ++k) {
    const auto& lev = levels[k];
    const long long L = static_cast<long long>(lev.size());
    auto fill = [&](long long idx) {
      Element v = lev[idx];
      int s = default_descent(W, v);
      Element vs = W.mul_right(v, s);
      for (Element u = 0; u < N; ++u) {
        Element us = W.mul_right(u, s);
        if (W.length(us) < W.length(u))
          R[v][u] = R[vs][us];
        else
          R[v][u] = kQm1 * R[vs][u] + kQ * R[vs][us];
      }
    };
    if constexpr (Parallel) {
#pragma omp parallel for schedule(dynamic)
      for (long long i = 0; i < L; ++i) fill(i);
    } else {
      for (long long i = 0; i < L; ++i) fill(i);
    }
  }
  return R;
}

}  // namespace

std::vector<std::vector<IntPolynomial>> r_polynomial_table(const WeylGroup& W) { return build_table<false>(W); }
std::vector<std::vector<IntPolynomial>> r_polynomial_table_parallel(const WeylGroup& W) {
  return build_table<true>(W);
}

WeightProfile weight_envelope(const WeylGroup& W, Element u, Element v) {
  WeightProfile P;
  P.label = "H_c(X_" + W.to_string(v) + " cap X^-_" + W.to_string(u) + ")";
  if (!W.bruhat_leq(u, v)) return P;
  const int d = W.length(v) - W.length(u);
  for (int n = d; n <= 2 * d; ++n) P.entries[n] = {-(n / 2), -n + d};
  return P;
}

WeightProfile ext_profile_standard(const WeylGroup& W, Element u, Element v) {
  WeightProfile P;
  P.label = "Ext(Delta_" + W.to_string(u) + ", Delta_" + W.to_string(v) + ")";
  if (!W.bruhat_leq(u, v)) return P;
  const int d = W.length(v) - W.length(u);
  for (int n = 0; n <= d; ++n) P.entries[n] = {-((n + d) / 2), -n};
  return P;
}

WeightProfile ext_profile_parabolic(const WeylGroup& W, Element u, Element v, int s) {
  if (W.is_right_descent(u, s) || W.is_right_descent(v, s))
    throw std::invalid_argument("ext_profile_parabolic: arguments must be minimal coset representatives for " +
                                std::string(1, W.letter(s)));
  WeightProfile P = ext_profile_standard(W, u, v);
  P.label = "Ext(Delta^" + std::string(1, W.letter(s)) + "_" + W.to_string(u) + ", Delta^" +
            std::string(1, W.letter(s)) + "_" + W.to_string(v) + ")";
  return P;
}

uint64_t multiplicative_order(uint64_t q, uint64_t ell) {
  q %= ell;
  if (q == 0) throw std::invalid_argument("q is not a unit modulo ell");
  uint64_t x = q, k = 1;
  while (x != 1) {
    x = x * q % ell;
    ++k;
  }
  return k;
}

ProjectiveWeightReport projective_weight_certificate(const WeylGroup& W, Element u, uint64_t ell, uint64_t q) {
  if (!is_prime(ell)) throw std::invalid_argument("ell must be prime");
  if (q % ell == 0) throw std::invalid_argument("q must be a unit modulo ell");
  ProjectiveWeightReport R;
  R.u = u;
  for (Element v = 0; v < W.size(); ++v)
    if (v != u && W.bruhat_leq(u, v)) R.flag_intervals.push_back({v, {1, W.length(v) - W.length(u)}});
  const int L = W.length(W.longest());
  R.end_window = {-L, L};
  R.ell = ell;
  R.q = q;
  R.order = multiplicative_order(q, ell);
  R.bound = 2 * L;
  R.hypothesis_holds = R.order > static_cast<uint64_t>(R.bound);
  return R;
}

// ---- flag enumeration over small finite fields ----

namespace {

using Bits = std::bitset<256>;

struct SmallField {
  unsigned q;
  unsigned add[4][4];
  unsigned mul[4][4];
  explicit SmallField(unsigned q_) : q(q_) {
    for (unsigned a = 0; a < q; ++a)
      for (unsigned b = 0; b < q; ++b) {
        if (q == 4) {
          add[a][b] = a ^ b;
          // GF(4) = F_2[x]/(x^2+x+1), elements as bit pairs.
          unsigned p = 0;
          for (unsigned i = 0; i < 2; ++i)
            if ((b >> i) & 1u) p ^= a << i;
          if (p & 4u) p ^= 0b111;
          mul[a][b] = p;
        } else {
          add[a][b] = (a + b) % q;
          mul[a][b] = (a * b) % q;
        }
      }
  }
};

struct FlagSpace {
  unsigned n, q, size;
  std::vector<std::vector<unsigned>> vadd;  // vadd[x][y]
  std::vector<std::vector<unsigned>> vmul;  // vmul[c][x]
  std::vector<std::vector<Bits>> subspaces;  // by dimension
  std::vector<std::vector<std::vector<size_t>>> children;  // [dim][idx] -> indices in dim+1
  std::vector<Bits> std_flag, opp_flag;   // E_j and E^-_j for j = 0..n

  FlagSpace(unsigned n_, unsigned q_) : n(n_), q(q_) {
    SmallField K(q);
    size = 1;
    for (unsigned i = 0; i < n; ++i) size *= q;
    if (size > 256) throw std::invalid_argument("flag_count: ambient space too large");
    auto digits = [&](unsigned x) {
      std::vector<unsigned> d(n);
      for (unsigned i = 0; i < n; ++i) {
        d[i] = x % q;
        x /= q;
      }
      return d;
    };
    auto pack = [&](const std::vector<unsigned>& d) {
      unsigned x = 0;
      for (unsigned i = n; i-- > 0;) x = x * q + d[i];
      return x;
    };
    vadd.assign(size, std::vector<unsigned>(size));
    vmul.assign(q, std::vector<unsigned>(size));
    for (unsigned x = 0; x < size; ++x) {
      auto dx = digits(x);
      for (unsigned y = 0; y < size; ++y) {
        auto dy = digits(y);
        std::vector<unsigned> s(n);
        for (unsigned i = 0; i < n; ++i) s[i] = K.add[dx[i]][dy[i]];
        vadd[x][y] = pack(s);
      }
      for (unsigned c = 0; c < q; ++c) {
        std::vector<unsigned> s(n);
        for (unsigned i = 0; i < n; ++i) s[i] = K.mul[c][dx[i]];
        vmul[c][x] = pack(s);
      }
    }
    subspaces.resize(n + 1);
    children.resize(n + 1);
    Bits zero;
    zero.set(0);
    subspaces[0] = {zero};
    for (unsigned k = 0; k < n; ++k) {
      std::map<std::string, size_t> seen;
      children[k].resize(subspaces[k].size());
      for (size_t idx = 0; idx < subspaces[k].size(); ++idx) {
        const Bits& S = subspaces[k][idx];
        for (unsigned v = 1; v < size; ++v) {
          if (S.test(v)) continue;
          Bits T;
          for (unsigned x = 0; x < size; ++x)
            if (S.test(x))
              for (unsigned c = 0; c < q; ++c) T.set(vadd[x][vmul[c][v]]);
          auto key = T.to_string();
          auto it = seen.find(key);
          size_t j;
          if (it == seen.end()) {
            j = subspaces[k + 1].size();
            seen[key] = j;
            subspaces[k + 1].push_back(T);
          } else {
            j = it->second;
          }
          auto& ch = children[k][idx];
          if (std::find(ch.begin(), ch.end(), j) == ch.end()) ch.push_back(j);
        }
      }
    }
    // E_j = span(e_1..e_j); E^-_j = span(e_n..e_{n-j+1}).
    std_flag.resize(n + 1);
    opp_flag.resize(n + 1);
    for (unsigned j = 0; j <= n; ++j) {
      for (unsigned x = 0; x < size; ++x) {
        auto d = digits(x);
        bool in_std = true, in_opp = true;
        for (unsigned i = 0; i < n; ++i) {
          if (d[i] && i >= j) in_std = false;
          if (d[i] && i < n - j) in_opp = false;
        }
        if (in_std) std_flag[j].set(x);
        if (in_opp) opp_flag[j].set(x);
      }
    }
  }

  unsigned dim_of(size_t count) const {
    unsigned d = 0;
    while (count > 1) {
      count /= q;
      ++d;
    }
    return d;
  }

  // Relative position permutation (1-based values) of a flag to a reference flag.
  std::vector<unsigned> position(const std::vector<Bits>& F, const std::vector<Bits>& E) const {
    std::vector<unsigned> sigma(n);
    for (unsigned i = 1; i <= n; ++i)
      for (unsigned j = 1; j <= n; ++j) {
        unsigned a = dim_of((F[i] & E[j]).count()), b = dim_of((F[i - 1] & E[j]).count());
        if (a > b) {
          sigma[i - 1] = j;
          break;
        }
      }
    return sigma;
  }
};

std::map<std::vector<unsigned>, Element> permutation_index(const WeylGroup& W) {
  const unsigned n = static_cast<unsigned>(W.rank()) + 1;
  std::map<std::vector<unsigned>, Element> idx;
  for (Element w = 0; w < W.size(); ++w) {
    std::vector<unsigned> p(n);
    for (unsigned i = 0; i < n; ++i) p[i] = i + 1;
    for (int s : W.normal_form(w)) std::swap(p[s], p[s + 1]);
    idx[p] = w;
  }
  return idx;
}

template <bool Parallel>
std::vector<std::vector<uint64_t>> count_flags(const WeylGroup& W, unsigned q) {
  if (W.type() != CartanType::A1 && W.type() != CartanType::A2 && W.type() != CartanType::A3)
    throw std::invalid_argument("flag_count: type A of rank at most 3 only");
  if (q != 2 && q != 3 && q != 4) throw std::invalid_argument("flag_count: q must be 2, 3 or 4");
  const unsigned n = static_cast<unsigned>(W.rank()) + 1;
  FlagSpace S(n, q);
  auto pidx = permutation_index(W);
  const size_t N = W.size();
  std::vector<std::vector<uint64_t>> total(N, std::vector<uint64_t>(N, 0));
  const long long lines = static_cast<long long>(S.subspaces[1].size());

  auto walk_from = [&](long long line, std::vector<std::vector<uint64_t>>& acc) {
    std::vector<Bits> F(n + 1);
    F[0] = S.subspaces[0][0];
    F[n] = S.subspaces[n][0];
    F[1] = S.subspaces[1][line];
    std::vector<size_t> idx(n + 1, 0);
    idx[1] = static_cast<size_t>(line);
    std::function<void(unsigned)> rec = [&](unsigned k) {
      if (k == n) {
        auto sigma = S.position(F, S.std_flag);
        auto tau = S.position(F, S.opp_flag);
        std::vector<unsigned> u(n);
        for (unsigned i = 0; i < n; ++i) u[i] = n + 1 - tau[i];
        acc[pidx.at(sigma)][pidx.at(u)] += 1;
        return;
      }
      for (size_t c : S.children[k - 1][idx[k - 1]]) {
        idx[k] = c;
        F[k] = S.subspaces[k][c];
        rec(k + 1);
      }
    };
    rec(2);
  };

  if constexpr (Parallel) {
#pragma omp parallel
    {
      std::vector<std::vector<uint64_t>> local(N, std::vector<uint64_t>(N, 0));
#pragma omp for schedule(dynamic)
      for (long long l = 0; l < lines; ++l) walk_from(l, local);
#pragma omp critical
      for (size_t a = 0; a < N; ++a)
        for (size_t b = 0; b < N; ++b) total[a][b] += local[a][b];
    }
  } else {
    for (long long l = 0; l < lines; ++l) walk_from(l, total);
  }
  return total;
}

}  // namespace

std::vector<std::vector<uint64_t>> flag_count_table(const WeylGroup& W, unsigned q) {
  return count_flags<true>(W, q);
}

std::vector<std::vector<uint64_t>> flag_count_table_serial(const WeylGroup& W, unsigned q) {
  return count_flags<false>(W, q);
}

uint64_t flag_count(const WeylGroup& W, unsigned q, Element u, Element v) { return flag_count_table(W, q)[v][u]; }

}  // namespace mkd
