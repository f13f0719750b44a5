#include "mkd/soergel.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace mkd {

namespace {

// Monomials of polynomial degree d in n variables, in lexicographically
// decreasing exponent order.
std::vector<std::vector<int>> monomials(int n, int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> e(n, 0);
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == n - 1) {
      e[i] = left;
      out.push_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
  };
  rec(rec, 0, d);
  return out;
}

// Homogeneous polynomial ring pieces S_0..S_max with products.
struct PolyRing {
  int n = 0;
  std::vector<std::vector<std::vector<int>>> mono;
  std::vector<std::map<std::vector<int>, size_t>> index;

  PolyRing(int rank, int max_deg) : n(rank) {
    for (int d = 0; d <= max_deg; ++d) {
      mono.push_back(monomials(n, d));
      std::map<std::vector<int>, size_t> idx;
      for (size_t i = 0; i < mono[d].size(); ++i) idx[mono[d][i]] = i;
      index.push_back(std::move(idx));
    }
  }
  size_t size(int d) const { return mono[d].size(); }
  Vec mul(const Fp& F, int da, const Vec& a, int db, const Vec& b) const {
    Vec out(size(da + db), 0);
    std::vector<int> e(n);
    for (size_t i = 0; i < a.size(); ++i) {
      if (!a[i]) continue;
      for (size_t j = 0; j < b.size(); ++j) {
        if (!b[j]) continue;
        for (int k = 0; k < n; ++k) e[k] = mono[da][i][k] + mono[db][j][k];
        size_t t = index[da + db].at(e);
        out[t] = F.add(out[t], F.mul(a[i], b[j]));
      }
    }
    return out;
  }
};

}  // namespace

CoinvariantAlgebra::CoinvariantAlgebra(std::shared_ptr<const WeylGroup> W, uint32_t ell) : W_(std::move(W)), F_(ell) {
  if (!is_prime(ell)) throw std::invalid_argument("coinvariant algebra: l must be prime");
  if (static_cast<int>(ell) <= W_->coxeter_number())
    throw std::invalid_argument("coinvariant algebra: l = " + std::to_string(ell) +
                                " must exceed the Coxeter number " + std::to_string(W_->coxeter_number()) + " of " +
                                mkd::to_string(W_->type()));
  const int n = W_->rank();
  const int N = W_->num_roots() / 2;  // top polynomial degree
  const int maxd = N + 1;
  PolyRing S(n, maxd);
  const auto& a = W_->cartan();

  // s_i on each S_d as a matrix acting on row vectors.
  std::vector<std::vector<Mat>> R(n);
  for (int i = 0; i < n; ++i) {
    std::vector<Vec> lin(n, Vec(n, 0));
    for (int j = 0; j < n; ++j) {
      lin[j][S.index[1].at([&] {
        std::vector<int> e(n, 0);
        e[j] = 1;
        return e;
      }())] = 1;
      // s_i(alpha_j) = alpha_j - a_ij alpha_i
      std::vector<int> ei(n, 0);
      ei[i] = 1;
      size_t ti = S.index[1].at(ei);
      lin[j][ti] = F_.sub(lin[j][ti], F_.from(a[i][j]));
    }
    for (int d = 0; d <= maxd; ++d) {
      Mat M(S.size(d), S.size(d));
      for (size_t m = 0; m < S.size(d); ++m) {
        Vec img(1, 1);
        int dd = 0;
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < S.mono[d][m][j]; ++k) {
            img = S.mul(F_, dd, img, 1, lin[j]);
            ++dd;
          }
        M.set_row(m, img);
      }
      R[i].push_back(std::move(M));
    }
  }

  // Positive-degree invariants and the ideal they generate, degree by degree.
  std::vector<std::vector<Vec>> invariant(maxd + 1);
  std::vector<RowSpace> ideal;
  for (int d = 0; d <= maxd; ++d) {
    const size_t m = S.size(d);
    ideal.emplace_back(F_, m);
    if (d == 0) continue;
    Mat stack(0, m);
    for (int i = 0; i < n; ++i) {
      Mat T = transpose(sub(F_, R[i][d], Mat::identity(m)));
      for (size_t r = 0; r < T.rows(); ++r) stack.append_row(T.row_vec(r));
    }
    Mat K = nullspace(F_, stack);
    for (size_t r = 0; r < K.rows(); ++r) invariant[d].push_back(K.row_vec(r));
    for (int k = 1; k <= d; ++k)
      for (const Vec& f : invariant[k])
        for (size_t t = 0; t < S.size(d - k); ++t) {
          Vec e(S.size(d - k), 0);
          e[t] = 1;
          ideal[d].insert(S.mul(F_, k, f, d - k, e));
        }
  }
  if (ideal[maxd].dim() != S.size(maxd)) throw std::logic_error("coinvariant algebra: ideal misses the top degree");

  // Standard monomials form the basis.
  std::vector<std::vector<size_t>> std_mono(maxd + 1);
  std::vector<size_t> offset(maxd + 2, 0);
  for (int d = 0; d <= maxd; ++d) {
    std_mono[d] = ideal[d].free_columns();
    offset[d + 1] = offset[d] + std_mono[d].size();
    for (size_t t : std_mono[d]) {
      degree_.push_back(2 * d);
      mono_.push_back(S.mono[d][t]);
    }
  }
  if (dim() != W_->size()) throw std::logic_error("coinvariant algebra: dimension differs from |W|");
  auto reduce = [&](int d, const Vec& v) {
    Vec out(dim(), 0);
    if (d > maxd) return out;
    Vec r = ideal[d].reduce(v);
    for (size_t k = 0; k < std_mono[d].size(); ++k) out[offset[d] + k] = r[std_mono[d][k]];
    return out;
  };
  auto as_poly = [&](size_t b) {
    int d = degree_[b] / 2;
    Vec v(S.size(d), 0);
    v[std_mono[d][b - offset[d]]] = 1;
    return v;
  };

  const size_t nC = dim();
  table_.assign(nC * nC, {});
  for (size_t i = 0; i < nC; ++i)
    for (size_t j = 0; j < nC; ++j) {
      int di = degree_[i] / 2, dj = degree_[j] / 2;
      if (di + dj > N) continue;
      Vec r = reduce(di + dj, S.mul(F_, di, as_poly(i), dj, as_poly(j)));
      for (size_t k = 0; k < nC; ++k)
        if (r[k]) table_[i * nC + j].emplace_back(static_cast<uint32_t>(k), r[k]);
    }

  refl_.assign(n, Mat(nC, nC));
  dem_.assign(n, Mat(nC, nC));
  for (int s = 0; s < n; ++s)
    for (size_t b = 0; b < nC; ++b) {
      int d = degree_[b] / 2;
      Vec p = as_poly(b);
      Vec sp = Vec(S.size(d), 0);
      for (size_t t = 0; t < p.size(); ++t)
        if (p[t]) axpy(F_, sp, p[t], R[s][d].row_vec(t));
      refl_[s].set_row(b, reduce(d, sp));
      if (d == 0) continue;
      // (p - s p) / alpha_s: every surviving monomial contains alpha_s.
      Vec diff = p;
      for (size_t t = 0; t < diff.size(); ++t) diff[t] = F_.sub(diff[t], sp[t]);
      Vec q(S.size(d - 1), 0);
      for (size_t t = 0; t < diff.size(); ++t) {
        if (!diff[t]) continue;
        std::vector<int> e = S.mono[d][t];
        if (e[s] == 0) throw std::logic_error("Demazure operator: remainder not divisible by alpha_s");
        --e[s];
        q[S.index[d - 1].at(e)] = diff[t];
      }
      dem_[s].set_row(b, reduce(d - 1, q));
    }

  inv_.resize(n);
  delta_.resize(n);
  for (int s = 0; s < n; ++s) {
    Mat K = nullspace(F_, transpose(dem_[s]));
    for (size_t r = 0; r < K.rows(); ++r) inv_[s].push_back(K.row_vec(r));
    if (2 * inv_[s].size() != nC) throw std::logic_error("invariants: dim C^s differs from |W|/2");
    bool found = false;
    for (size_t b = offset[1]; b < offset[2] && !found; ++b) {
      uint32_t c = dem_[s](b, 0);
      if (!c) continue;
      delta_[s] = Vec(nC, 0);
      delta_[s][b] = F_.inv(c);
      found = true;
    }
    if (!found) throw std::logic_error("no delta_s with invertible Demazure image");
  }
}

GradedDims CoinvariantAlgebra::hilbert_series() const {
  GradedDims d;
  for (int x : degree_) ++d[x];
  return d;
}

int CoinvariantAlgebra::top_degree() const { return degree_.empty() ? 0 : degree_.back(); }

Vec CoinvariantAlgebra::one() const {
  Vec v(dim(), 0);
  v[0] = 1;
  return v;
}

Vec CoinvariantAlgebra::generator(int i) const {
  // Degree-2 part is all of S_1: basis monomials alpha_j.
  Vec v(dim(), 0);
  for (size_t b = 0; b < dim(); ++b)
    if (degree_[b] == 2 && mono_[b][i] == 1) v[b] = 1;
  return v;
}

Vec CoinvariantAlgebra::multiply(const Vec& a, const Vec& b) const {
  const size_t n = dim();
  Vec out(n, 0);
  for (size_t i = 0; i < n; ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < n; ++j) {
      if (!b[j]) continue;
      uint32_t c = F_.mul(a[i], b[j]);
      for (const auto& [k, v] : table_[i * n + j]) out[k] = F_.add(out[k], F_.mul(c, v));
    }
  }
  return out;
}

Mat CoinvariantAlgebra::mult_matrix(const Vec& c) const {
  const size_t n = dim();
  Mat M(n, n);
  for (size_t i = 0; i < n; ++i) {
    Vec e(n, 0);
    e[i] = 1;
    M.set_row(i, multiply(e, c));
  }
  return M;
}

namespace {

Vec row_apply(const Fp& F, const Vec& v, const Mat& A) {
  Vec out(A.cols(), 0);
  for (size_t k = 0; k < v.size(); ++k)
    if (v[k]) axpy(F, out, v[k], A.row_vec(k));
  return out;
}

Mat combine(const Fp& F, const std::vector<Mat>& rep, const Vec& c, size_t dim) {
  Mat M(dim, dim);
  for (size_t b = 0; b < c.size(); ++b) {
    if (!c[b]) continue;
    auto& m = M.data();
    const auto& r = rep[b].data();
    for (size_t t = 0; t < m.size(); ++t)
      if (r[t]) m[t] = F.add(m[t], F.mul(c[b], r[t]));
  }
  return M;
}

}  // namespace

Vec CoinvariantAlgebra::reflect(int s, const Vec& c) const { return row_apply(F_, c, refl_[s]); }
Vec CoinvariantAlgebra::demazure(int s, const Vec& c) const { return row_apply(F_, c, dem_[s]); }

GradedDims BSModule::graded_dims() const {
  GradedDims d;
  for (int x : degree) ++d[x];
  return d;
}

BSModule bott_samelson(const CoinvariantAlgebra& C, const Word& f) {
  const Fp& F = C.field();
  const size_t nC = C.dim();
  BSModule D;
  D.degree = {0};
  // D_empty = k, C acting through the augmentation.
  D.rep.assign(nC, Mat(1, 1));
  D.rep[0](0, 0) = 1;
  for (auto it = f.rbegin(); it != f.rend(); ++it) {
    const int s = *it;
    const size_t m = D.dim();
    BSModule N;
    N.degree = D.degree;
    for (int x : D.degree) N.degree.push_back(x + 2);
    N.rep.assign(nC, Mat(2 * m, 2 * m));
    const Vec& delta = C.delta(s);
    for (size_t b = 0; b < nC; ++b) {
      Vec cb(nC, 0);
      cb[b] = 1;
      for (int part = 0; part < 2; ++part) {
        // y = c * (1 or delta) = y0 + delta y1 with y0, y1 in C^s.
        Vec y = part == 0 ? cb : C.multiply(cb, delta);
        Vec y1 = C.demazure(s, y);
        Vec y0 = y;
        Vec dy1 = C.multiply(delta, y1);
        for (size_t k = 0; k < nC; ++k) y0[k] = F.sub(y0[k], dy1[k]);
        Mat A0 = combine(F, D.rep, y0, m), A1 = combine(F, D.rep, y1, m);
        for (size_t j = 0; j < m; ++j)
          for (size_t t = 0; t < m; ++t) {
            N.rep[b](part * m + j, t) = A0(j, t);
            N.rep[b](part * m + j, m + t) = A1(j, t);
          }
      }
    }
    D = std::move(N);
  }
  D.word = f;
  return D;
}

namespace {

// Algebra elements whose commutation defines linearity.
std::vector<Vec> linearity_set(const CoinvariantAlgebra& C, std::optional<int> wall) {
  std::vector<Vec> out;
  if (!wall) {
    for (int i = 0; i < C.group().rank(); ++i) out.push_back(C.generator(i));
  } else {
    out = C.invariants(*wall);
  }
  return out;
}

}  // namespace

std::vector<Mat> graded_hom(const CoinvariantAlgebra& C, const BSModule& Dg, const BSModule& Df, int d,
                            std::optional<int> wall) {
  const Fp& F = C.field();
  const size_t m = Dg.dim(), n = Df.dim();
  std::vector<std::pair<size_t, size_t>> unk;
  std::map<std::pair<size_t, size_t>, size_t> pos;
  for (size_t r = 0; r < m; ++r)
    for (size_t c = 0; c < n; ++c)
      if (Df.degree[c] == Dg.degree[r] + d) {
        pos[{r, c}] = unk.size();
        unk.emplace_back(r, c);
      }
  if (unk.empty()) return {};
  std::vector<Vec> eqs;
  for (const Vec& a : linearity_set(C, wall)) {
    Mat Rg = combine(F, Dg.rep, a, m), Rf = combine(F, Df.rep, a, n);
    // (Rg X - X Rf)[r][c'] = 0
    for (size_t r = 0; r < m; ++r)
      for (size_t c2 = 0; c2 < n; ++c2) {
        Vec e(unk.size(), 0);
        bool any = false;
        for (size_t r2 = 0; r2 < m; ++r2) {
          if (!Rg(r, r2)) continue;
          auto it = pos.find({r2, c2});
          if (it == pos.end()) continue;
          e[it->second] = F.add(e[it->second], Rg(r, r2));
          any = true;
        }
        for (size_t c = 0; c < n; ++c) {
          if (!Rf(c, c2)) continue;
          auto it = pos.find({r, c});
          if (it == pos.end()) continue;
          e[it->second] = F.sub(e[it->second], Rf(c, c2));
          any = true;
        }
        if (any && !is_zero(e)) eqs.push_back(std::move(e));
      }
  }
  Mat K = eqs.empty() ? Mat::identity(unk.size()) : nullspace(F, from_rows(unk.size(), eqs));
  std::vector<Mat> out;
  for (size_t k = 0; k < K.rows(); ++k) {
    Mat X(m, n);
    for (size_t u = 0; u < unk.size(); ++u) X(unk[u].first, unk[u].second) = K(k, u);
    out.push_back(std::move(X));
  }
  return out;
}

GradedDims graded_hom_dims(const CoinvariantAlgebra& C, const BSModule& Dg, const BSModule& Df,
                           std::optional<int> wall) {
  GradedDims out;
  const int lo = -Dg.degree.back(), hi = Df.degree.back();
  for (int d = lo; d <= hi; ++d) {
    size_t k = graded_hom(C, Dg, Df, d, wall).size();
    if (k) out[d] = k;
  }
  return out;
}

namespace {

struct BlockKey {
  uint32_t tgt, src;
  int deg;
  bool operator<(const BlockKey& o) const { return std::tie(tgt, src, deg) < std::tie(o.tgt, o.src, o.deg); }
};

Vec flatten(const Mat& X) { return X.data(); }

// Hom spaces per block (possibly extending given prefixes) assembled into an
// algebra under composition.
EndAlgebra assemble(std::shared_ptr<const CoinvariantAlgebra> C, const std::vector<Word>& family,
                    std::vector<BSModule> modules, std::optional<int> wall,
                    const std::map<BlockKey, std::vector<Mat>>* prefix) {
  const Fp& F = C->field();
  const uint32_t k = static_cast<uint32_t>(family.size());
  EndAlgebra E;
  E.C = C;
  E.family = family;
  E.wall = wall;
  E.modules = std::move(modules);
  std::map<BlockKey, std::pair<size_t, RowSpace>> blocks;
  std::vector<int> degree;
  std::vector<uint32_t> left, right, idem(k);
  std::vector<std::pair<uint32_t, uint32_t>> pairs;
  for (uint32_t t = 0; t < k; ++t)
    for (uint32_t s = 0; s < k; ++s) pairs.emplace_back(t, s);
  std::vector<std::map<int, std::vector<Mat>>> solved(pairs.size());
#pragma omp parallel for schedule(dynamic)
  for (size_t p = 0; p < pairs.size(); ++p) {
    auto [t, s] = pairs[p];
    const BSModule &Dg = E.modules[s], &Df = E.modules[t];
    for (int d = -Dg.degree.back(); d <= Df.degree.back(); ++d) {
      auto H = graded_hom(*C, Dg, Df, d, wall);
      if (!H.empty()) solved[p][d] = std::move(H);
    }
  }
  for (size_t p = 0; p < pairs.size(); ++p) {
    auto [t, s] = pairs[p];
    const size_t flat = E.modules[s].dim() * E.modules[t].dim();
    std::map<int, std::vector<Mat>> cand;
    if (t == s) cand[0].push_back(Mat::identity(E.modules[s].dim()));
    if (prefix)
      for (const auto& [key, mats] : *prefix)
        if (key.tgt == t && key.src == s)
          for (const Mat& X : mats) cand[key.deg].push_back(X);
    for (auto& [d, H] : solved[p])
      for (Mat& X : H) cand[d].push_back(std::move(X));
    for (auto& [d, mats] : cand) {
      auto& blk = blocks.try_emplace(BlockKey{t, s, d}, E.maps.size(), RowSpace(F, flat, true)).first->second;
      for (Mat& X : mats)
        if (blk.second.insert(flatten(X))) {
          if (t == s && d == 0 && blk.second.dim() == 1) idem[t] = static_cast<uint32_t>(E.maps.size());
          E.maps.push_back(std::move(X));
          degree.push_back(d);
          left.push_back(t);
          right.push_back(s);
        }
    }
  }
  const size_t n = E.maps.size();
  std::vector<SparseVec> table(n * n);
#pragma omp parallel for schedule(dynamic)
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (right[i] != left[j]) continue;
      // a.b = a o b, matrices in the row convention compose as X_b X_a.
      Mat P = mul(F, E.maps[j], E.maps[i]);
      if (P.is_zero()) continue;
      auto it = blocks.find(BlockKey{left[i], right[j], degree[i] + degree[j]});
      std::optional<Vec> co;
      if (it != blocks.end()) co = it->second.second.coords(flatten(P));
      if (!co) throw std::logic_error("endomorphism algebra: composite outside the Hom space");
      for (size_t t = 0; t < co->size(); ++t)
        if ((*co)[t]) table[i * n + j].emplace_back(static_cast<uint32_t>(it->second.first + t), (*co)[t]);
    }
  E.algebra = std::make_shared<GradedAlgebra>(F, degree, left, right, idem, std::move(table));
  return E;
}

}  // namespace

EndAlgebra endomorphism_algebra(std::shared_ptr<const CoinvariantAlgebra> C, const std::vector<Word>& family) {
  std::vector<BSModule> mods;
  for (const Word& f : family) mods.push_back(bott_samelson(*C, f));
  return assemble(C, family, std::move(mods), std::nullopt, nullptr);
}

WallAlgebra wall_algebra(const EndAlgebra& E, int s) {
  if (s < 0 || s >= E.C->group().rank()) throw std::invalid_argument("wall_algebra: simple reflection out of range");
  std::map<BlockKey, std::vector<Mat>> prefix;
  const auto& A = *E.algebra;
  for (uint32_t b = 0; b < A.dim(); ++b) prefix[BlockKey{A.left(b), A.right(b), A.degree(b)}].push_back(E.maps[b]);
  WallAlgebra W;
  W.algebra = assemble(E.C, E.family, E.modules, s, &prefix);
  // Prefix insertion keeps the E basis first in each block.
  const auto& B = *W.algebra.algebra;
  std::map<BlockKey, uint32_t> first;
  for (uint32_t b = 0; b < B.dim(); ++b) first.try_emplace(BlockKey{B.left(b), B.right(b), B.degree(b)}, b);
  std::map<BlockKey, uint32_t> seen;
  W.embedding.resize(A.dim());
  for (uint32_t b = 0; b < A.dim(); ++b) {
    BlockKey key{A.left(b), A.right(b), A.degree(b)};
    uint32_t idx = first.at(key) + seen[key]++;
    if (!(W.algebra.maps[idx] == E.maps[b])) throw std::logic_error("wall_algebra: embedding is not a coordinate prefix");
    W.embedding[b] = idx;
  }
  return W;
}

GradedModule wall_as_right_module(const EndAlgebra& E, const WallAlgebra& Es) {
  const auto& A = E.algebra;
  const auto& B = *Es.algebra.algebra;
  GradedModule M;
  M.A = A;
  const size_t n = B.dim();
  for (uint32_t b = 0; b < n; ++b) {
    M.degree.push_back(B.degree(b));
    M.block.push_back(B.right(b));
  }
  M.action.assign(A->dim(), Mat(n, n));
  for (uint32_t a = 0; a < A->dim(); ++a) {
    uint32_t ia = Es.embedding[a];
    for (uint32_t x = 0; x < n; ++x) {
      if (B.right(x) != B.left(ia)) continue;
      for (const auto& [t, c] : B.product(x, ia)) M.action[a](x, t) = c;
    }
  }
  return M;
}

std::vector<Vec> wall_trace(const EndAlgebra& E, const WallAlgebra& Es) {
  const Fp& F = E.C->field();
  const int s = *Es.algebra.wall;
  const auto& A = *E.algebra;
  const auto& B = *Es.algebra.algebra;
  std::map<BlockKey, std::pair<std::vector<uint32_t>, RowSpace>> blocks;
  for (uint32_t b = 0; b < A.dim(); ++b) {
    const size_t flat = E.modules[A.right(b)].dim() * E.modules[A.left(b)].dim();
    auto& blk = blocks.try_emplace(BlockKey{A.left(b), A.right(b), A.degree(b)}, std::vector<uint32_t>{}, RowSpace(F, flat, true))
                    .first->second;
    blk.first.push_back(b);
    blk.second.insert(flatten(E.maps[b]));
  }
  const Vec& delta = E.C->delta(s);
  const Vec sdelta = E.C->reflect(s, delta);
  std::vector<Mat> Rd, Rsd;
  for (const BSModule& D : E.modules) {
    Rd.push_back(combine(F, D.rep, delta, D.dim()));
    Rsd.push_back(combine(F, D.rep, sdelta, D.dim()));
  }
  std::vector<Vec> out(B.dim(), Vec(A.dim(), 0));
  for (uint32_t b = 0; b < B.dim(); ++b) {
    const uint32_t t = B.left(b), src = B.right(b);
    const Mat& X = Es.algebra.maps[b];
    Mat T = sub(F, mul(F, X, Rd[t]), mul(F, Rsd[src], X));
    if (T.is_zero()) continue;
    auto it = blocks.find(BlockKey{t, src, B.degree(b) + 2});
    std::optional<Vec> co;
    if (it != blocks.end()) co = it->second.second.coords(flatten(T));
    if (!co) throw std::logic_error("wall_trace: image is not C-linear");
    for (size_t k = 0; k < co->size(); ++k) out[b][it->second.first[k]] = (*co)[k];
  }
  return out;
}

ShiftCheck bimodule_shift_check(const EndAlgebra& E, const WallAlgebra& Es) {
  ShiftCheck R;
  const auto& B = *Es.algebra.algebra;
  const uint32_t k = static_cast<uint32_t>(E.family.size());
  GradedModule M = wall_as_right_module(E, Es);
  R.holds = true;
  for (uint32_t f = 0; f < k; ++f) {
    GradedModule P = projective(E.algebra, f);
    for (uint32_t g = 0; g < k; ++g) {
      // e_g E^s as a right E-module.
      std::vector<Vec> rows;
      for (uint32_t x = 0; x < B.dim(); ++x)
        if (B.left(x) == g) {
          Vec v(B.dim(), 0);
          v[x] = 1;
          rows.push_back(std::move(v));
        }
      GradedModule Mg = submodule(M, rows).module;
      GradedDims lhs = hom_dims(Mg, P);
      GradedDims rhs;
      for (uint32_t x = 0; x < B.dim(); ++x)
        if (B.left(x) == f && B.right(x) == g) ++rhs[B.degree(x) + R.shift];
      if (lhs != rhs) R.holds = false;
      R.pieces.emplace_back(std::move(lhs), std::move(rhs));
    }
  }
  return R;
}

}  // namespace mkd
