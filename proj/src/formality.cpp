#include "mkd/formality.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

namespace mkd {

namespace {

Vec row_apply(const Fp& F, const Vec& v, const Mat& A) {
  Vec out(A.cols(), 0);
  for (size_t k = 0; k < v.size(); ++k)
    if (v[k]) axpy(F, out, v[k], A.row_vec(k));
  return out;
}

Vec unit_vector(size_t n, size_t i) {
  Vec v(n, 0);
  v[i] = 1;
  return v;
}

std::optional<Bidegree> bidegree_of(const std::vector<Bidegree>& bideg, const Vec& v) {
  std::optional<Bidegree> b;
  for (size_t k = 0; k < v.size(); ++k) {
    if (!v[k]) continue;
    if (b && *b != bideg[k]) throw std::invalid_argument("vector is not bihomogeneous");
    b = bideg[k];
  }
  return b;
}

int sign(const Fp& F, int i) { return (i % 2 == 0) ? 1 : static_cast<int>(F.p() - 1); }

}  // namespace

Vec BigradedDgAlgebra::multiply(const Vec& a, const Vec& b) const {
  const Fp F = field();
  const size_t n = dim();
  Vec out(n, 0);
  for (size_t i = 0; i < n; ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < n; ++j) {
      if (!b[j]) continue;
      uint32_t c = F.mul(a[i], b[j]);
      for (const auto& [k, v] : table[i * n + j]) out[k] = F.add(out[k], F.mul(c, v));
    }
  }
  return out;
}

Vec BigradedDgAlgebra::differential(const Vec& v) const { return row_apply(field(), v, d); }

BigradedDims BigradedDgAlgebra::dims() const {
  BigradedDims out;
  for (const auto& b : bideg) ++out[b];
  return out;
}

std::string BigradedDgAlgebra::validate() const {
  const Fp F = field();
  const size_t n = dim();
  if (table.size() != n * n) return "multiplication table has the wrong size";
  if (d.rows() != n || d.cols() != n) return "differential has the wrong shape";
  if (unit >= n) return "unit index out of range";
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (d(i, j) && (bideg[j].first != bideg[i].first + 1 || bideg[j].second != bideg[i].second))
        return "differential does not have bidegree (1, 0)";
      for (const auto& [k, v] : table[i * n + j])
        if (v && (bideg[k].first != bideg[i].first + bideg[j].first || bideg[k].second != bideg[i].second + bideg[j].second))
          return "product does not respect bidegrees";
    }
  if (!mul(F, d, d).is_zero()) return "d o d != 0";
  for (size_t i = 0; i < n; ++i) {
    Vec e = unit_vector(n, i), u = unit_vector(n, unit);
    if (multiply(u, e) != e || multiply(e, u) != e) return "unit axiom fails";
  }
  std::vector<Vec> E(n), dE(n);
  for (size_t i = 0; i < n; ++i) {
    E[i] = unit_vector(n, i);
    dE[i] = differential(E[i]);
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      Vec ab = multiply(E[i], E[j]);
      Vec lhs = differential(ab);
      Vec rhs = multiply(dE[i], E[j]);
      Vec t = multiply(E[i], dE[j]);
      axpy(F, rhs, static_cast<uint32_t>(sign(F, bideg[i].first)), t);
      if (lhs != rhs) return "Leibniz rule fails";
      for (size_t k = 0; k < n; ++k)
        if (multiply(ab, E[k]) != multiply(E[i], multiply(E[j], E[k]))) return "product is not associative";
    }
  return {};
}

std::vector<size_t> basis_in(const BigradedDgAlgebra& R, Bidegree b) {
  std::vector<size_t> out;
  for (size_t k = 0; k < R.dim(); ++k)
    if (R.bideg[k] == b) out.push_back(k);
  return out;
}

std::optional<Vec> Cohomology::class_of(const Vec& v) const {
  Vec out(algebra.dim(), 0);
  auto b = bidegree_of(source_bideg, v);
  if (!b) return out;
  auto it = pieces.find(*b);
  if (it == pieces.end()) return std::nullopt;
  auto co = it->second.space.coords(v);
  if (!co) return std::nullopt;
  for (size_t t = 0; t < it->second.classes.size(); ++t) out[it->second.classes[t]] = (*co)[it->second.boundaries + t];
  return out;
}

Cohomology cohomology(const BigradedDgAlgebra& R) {
  if (auto err = R.validate(); !err.empty()) throw std::invalid_argument("cohomology: " + err);
  const Fp F = R.field();
  const size_t n = R.dim();
  Cohomology H;
  H.source_bideg = R.bideg;
  std::set<Bidegree> degs(R.bideg.begin(), R.bideg.end());
  for (const Bidegree& b : degs) {
    auto idx = basis_in(R, b);
    // Cocycles: rows v on idx with v d = 0.
    Mat T(n, idx.size());
    for (size_t a = 0; a < idx.size(); ++a)
      for (size_t j = 0; j < n; ++j) T(j, a) = R.d(idx[a], j);
    Mat K = nullspace(F, T);
    Cohomology::Piece piece{RowSpace(F, n, true), 0, {}};
    for (size_t k : basis_in(R, {b.first - 1, b.second})) piece.space.insert(R.d.row_vec(k));
    piece.boundaries = piece.space.dim();
    for (size_t r = 0; r < K.rows(); ++r) {
      Vec z(n, 0);
      for (size_t a = 0; a < idx.size(); ++a) z[idx[a]] = K(r, a);
      if (piece.space.insert(z)) {
        piece.classes.push_back(H.reps.size());
        H.reps.push_back(std::move(z));
        H.algebra.bideg.push_back(b);
      }
    }
    H.pieces.emplace(b, std::move(piece));
  }
  const size_t h = H.reps.size();
  H.algebra.p = R.p;
  H.algebra.d = Mat(h, h);
  H.algebra.table.assign(h * h, {});
  auto one = H.class_of(unit_vector(n, R.unit));
  if (!one) throw std::logic_error("cohomology: unit is not a cocycle");
  bool unit_found = false;
  for (size_t k = 0; k < h; ++k)
    if ((*one)[k]) {
      if (unit_found || (*one)[k] != 1) throw std::logic_error("cohomology: unit class is not a basis vector");
      H.algebra.unit = static_cast<uint32_t>(k);
      unit_found = true;
    }
  if (!unit_found) throw std::logic_error("cohomology: unit class vanishes");
  for (size_t a = 0; a < h; ++a)
    for (size_t b = 0; b < h; ++b) {
      auto c = H.class_of(R.multiply(H.reps[a], H.reps[b]));
      if (!c) throw std::logic_error("cohomology: product of cocycles is not a cocycle");
      for (size_t k = 0; k < h; ++k)
        if ((*c)[k]) H.algebra.table[a * h + b].emplace_back(static_cast<uint32_t>(k), (*c)[k]);
    }
  return H;
}

bool diagonal_check(const BigradedDgAlgebra& R) {
  Cohomology H = cohomology(R);
  for (const auto& b : H.algebra.bideg)
    if (b.first != b.second) return false;
  return true;
}

ShearResult shear_subalgebra(const BigradedDgAlgebra& R) {
  const Fp F = R.field();
  const size_t n = R.dim();
  Cohomology H = cohomology(R);
  std::vector<Vec> basis;
  std::vector<Bidegree> bideg;
  std::map<Bidegree, std::pair<size_t, RowSpace>> blocks;
  std::set<Bidegree> degs(R.bideg.begin(), R.bideg.end());
  for (const Bidegree& b : degs) {
    if (b.second < b.first) continue;
    auto& blk = blocks.try_emplace(b, basis.size(), RowSpace(F, n, true)).first->second;
    std::vector<Vec> cand;
    auto idx = basis_in(R, b);
    if (b.second > b.first) {
      for (size_t k : idx) cand.push_back(unit_vector(n, k));
    } else {
      if (R.bideg[R.unit] == b) cand.push_back(unit_vector(n, R.unit));
      Mat T(n, idx.size());
      for (size_t a = 0; a < idx.size(); ++a)
        for (size_t j = 0; j < n; ++j) T(j, a) = R.d(idx[a], j);
      Mat K = nullspace(F, T);
      for (size_t r = 0; r < K.rows(); ++r) {
        Vec z(n, 0);
        for (size_t a = 0; a < idx.size(); ++a) z[idx[a]] = K(r, a);
        cand.push_back(std::move(z));
      }
    }
    for (Vec& v : cand)
      if (blk.second.insert(v)) {
        basis.push_back(std::move(v));
        bideg.push_back(b);
      }
  }
  ShearResult S;
  const size_t m = basis.size();
  S.sub.p = R.p;
  S.sub.bideg = bideg;
  S.sub.d = Mat(m, m);
  S.sub.table.assign(m * m, {});
  S.inclusion = m ? from_rows(n, basis) : Mat(0, n);
  S.subalgebra = true;
  auto coords = [&](const Vec& v) -> std::optional<Vec> {
    Vec out(m, 0);
    auto b = bidegree_of(R.bideg, v);
    if (!b) return out;
    auto it = blocks.find(*b);
    if (it == blocks.end()) return std::nullopt;
    auto co = it->second.second.coords(v);
    if (!co) return std::nullopt;
    for (size_t t = 0; t < co->size(); ++t) out[it->second.first + t] = (*co)[t];
    return out;
  };
  for (size_t a = 0; a < m; ++a) {
    auto dv = coords(R.differential(basis[a]));
    if (!dv) {
      S.subalgebra = false;
      continue;
    }
    S.sub.d.set_row(a, *dv);
    for (size_t b = 0; b < m; ++b) {
      auto c = coords(R.multiply(basis[a], basis[b]));
      if (!c) {
        S.subalgebra = false;
        continue;
      }
      for (size_t k = 0; k < m; ++k)
        if ((*c)[k]) S.sub.table[a * m + b].emplace_back(static_cast<uint32_t>(k), (*c)[k]);
    }
  }
  if (auto u = coords(unit_vector(n, R.unit))) {
    for (size_t k = 0; k < m; ++k)
      if ((*u)[k] == 1) S.sub.unit = static_cast<uint32_t>(k);
  } else {
    S.subalgebra = false;
  }
  if (S.subalgebra && !S.sub.validate().empty()) S.subalgebra = false;
  S.cohomology = H.algebra;
  S.projection = Mat(m, H.algebra.dim());
  for (size_t a = 0; a < m; ++a) {
    if (bideg[a].first != bideg[a].second) continue;
    auto c = H.class_of(basis[a]);
    if (c) S.projection.set_row(a, *c);
  }
  return S;
}

QuasiIsoReport verify_quasi_iso(const BigradedDgAlgebra& A, const BigradedDgAlgebra& B, const Mat& f) {
  const Fp F = A.field();
  if (f.rows() != A.dim() || f.cols() != B.dim()) throw std::invalid_argument("verify_quasi_iso: map has the wrong shape");
  for (size_t i = 0; i < A.dim(); ++i)
    for (size_t j = 0; j < B.dim(); ++j)
      if (f(i, j) && A.bideg[i] != B.bideg[j]) throw std::invalid_argument("verify_quasi_iso: map does not preserve bidegrees");
  if (mul(F, A.d, f) != mul(F, f, B.d)) throw std::invalid_argument("verify_quasi_iso: not a chain map");
  Cohomology HA = cohomology(A), HB = cohomology(B);
  QuasiIsoReport R;
  R.quasi_iso = true;
  std::set<Bidegree> degs(HA.algebra.bideg.begin(), HA.algebra.bideg.end());
  degs.insert(HB.algebra.bideg.begin(), HB.algebra.bideg.end());
  for (const Bidegree& b : degs) {
    std::vector<Vec> rows;
    for (size_t k = 0; k < HA.algebra.dim(); ++k)
      if (HA.algebra.bideg[k] == b) rows.push_back(*HB.class_of(row_apply(F, HA.reps[k], f)));
    size_t da = rows.size(), db = 0;
    for (const auto& x : HB.algebra.bideg) db += x == b;
    size_t r = rows.empty() ? 0 : rank(F, from_rows(HB.algebra.dim(), rows));
    R.ranks[b] = {r, da == db ? da : std::max(da, db)};
    if (da != db || r != da) {
      R.quasi_iso = false;
      if (R.reason.empty())
        R.reason = "H^{" + std::to_string(b.first) + "," + std::to_string(b.second) + "}: dims " + std::to_string(da) +
                   " -> " + std::to_string(db) + ", rank " + std::to_string(r);
    }
  }
  return R;
}

BigradedDims BigradedComplex::dims() const {
  BigradedDims out;
  for (const auto& b : bideg) ++out[b];
  return out;
}

BigradedComplex omega_shear(const BigradedComplex& M) {
  BigradedComplex O = M;
  for (auto& [a, b] : O.bideg) a -= b;
  return O;
}

BigradedComplex omega_inverse(const BigradedComplex& M) {
  BigradedComplex O = M;
  for (auto& [a, b] : O.bideg) a += b;
  return O;
}

BigradedComplex internal_shift(const BigradedComplex& M, int n) {
  BigradedComplex O = M;
  for (auto& b : O.bideg) b.second += n;
  return O;
}

BigradedComplex cohomological_shift(const BigradedComplex& M, int n) {
  BigradedComplex O = M;
  for (auto& b : O.bideg) b.first -= n;
  if (n % 2 != 0) O.d = scale(Fp(M.p), M.d, M.p - 1);
  return O;
}

bool same_complex(const BigradedComplex& A, const BigradedComplex& B) {
  return A.p == B.p && A.bideg == B.bideg && A.d == B.d;
}

int internal_degree_from_weight(int exponent) { return -2 * exponent; }

BigradedDgAlgebra random_diagonal_instance(uint64_t seed, const RandomDgOptions& opt) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const Fp F(opt.p);
  const int pairs = uniform(1, opt.max_pairs);
  const size_t budget = opt.max_dim - 2 * static_cast<size_t>(pairs);
  // Truncated polynomial algebra on generators of bidegree (k, k).
  const int gens = uniform(1, 3);
  std::vector<int> gdeg(gens);
  for (int& g : gdeg) g = uniform(1, 2);
  std::vector<std::vector<int>> monos{std::vector<int>(gens, 0)};
  for (int top = 1;; ++top) {
    std::vector<std::vector<int>> next;
    for (const auto& m : monos) {
      int tot = 0;
      for (int e : m) tot += e;
      if (tot != top - 1) continue;
      for (int g = 0; g < gens; ++g) {
        auto m2 = m;
        ++m2[g];
        if (std::find(next.begin(), next.end(), m2) == next.end()) next.push_back(m2);
      }
    }
    if (monos.size() + next.size() > budget || top > 4 || uniform(0, 3) == 0) break;
    monos.insert(monos.end(), next.begin(), next.end());
  }
  BigradedDgAlgebra R;
  R.p = opt.p;
  for (const auto& m : monos) {
    int deg = 0;
    for (int g = 0; g < gens; ++g) deg += m[g] * gdeg[g];
    R.bideg.emplace_back(deg, deg);
  }
  const size_t base = monos.size();
  for (int k = 0; k < pairs; ++k) {
    int i = uniform(0, 3), j = uniform(-1, 4);
    R.bideg.emplace_back(i, j);
    R.bideg.emplace_back(i + 1, j);
  }
  const size_t n = R.bideg.size();
  R.unit = 0;
  R.table.assign(n * n, {});
  R.d = Mat(n, n);
  for (size_t a = 0; a < base; ++a)
    for (size_t b = 0; b < base; ++b) {
      std::vector<int> m(gens);
      for (int g = 0; g < gens; ++g) m[g] = monos[a][g] + monos[b][g];
      auto it = std::find(monos.begin(), monos.end(), m);
      if (it != monos.end()) R.table[a * n + b].emplace_back(static_cast<uint32_t>(it - monos.begin()), 1);
    }
  for (size_t a = base; a < n; ++a) {
    R.table[0 * n + a].emplace_back(static_cast<uint32_t>(a), 1);
    R.table[a * n + 0].emplace_back(static_cast<uint32_t>(a), 1);
  }
  for (size_t a = base; a < n; a += 2) R.d(a, a + 1) = 1;
  // Random bidegree-preserving change of basis fixing the unit.
  std::map<Bidegree, std::vector<size_t>> blocks;
  for (size_t k = 1; k < n; ++k) blocks[R.bideg[k]].push_back(k);
  Mat G = Mat::identity(n);
  for (const auto& [b, idx] : blocks) {
    for (;;) {
      Mat X(idx.size(), idx.size());
      for (auto& v : X.data()) v = static_cast<uint32_t>(rng() % opt.p);
      if (rank(F, X) != idx.size()) continue;
      for (size_t r = 0; r < idx.size(); ++r)
        for (size_t c = 0; c < idx.size(); ++c) G(idx[r], idx[c]) = X(r, c);
      break;
    }
  }
  Mat Gi = *inverse(F, G);
  // New basis vector k is row k of G in old coordinates.
  BigradedDgAlgebra S = R;
  S.d = mul(F, mul(F, G, R.d), Gi);
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) {
      Vec prod = row_apply(F, R.multiply(G.row_vec(a), G.row_vec(b)), Gi);
      SparseVec sv;
      for (size_t k = 0; k < n; ++k)
        if (prod[k]) sv.emplace_back(static_cast<uint32_t>(k), prod[k]);
      S.table[a * n + b] = std::move(sv);
    }
  return S;
}

BigradedDgAlgebra non_diagonal_instance(uint32_t p) {
  BigradedDgAlgebra R;
  R.p = p;
  R.bideg = {{0, 0}, {1, 0}};
  R.unit = 0;
  R.table.assign(4, {});
  R.table[0] = {{0, 1}};
  R.table[1] = {{1, 1}};
  R.table[2] = {{1, 1}};
  R.d = Mat(2, 2);
  return R;
}

}  // namespace mkd
