#include "mkd/gradedO.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace mkd {

namespace {

Vec row_apply(const Fp& F, const Vec& v, const Mat& A) {
  Vec out(A.cols(), 0);
  for (size_t k = 0; k < v.size(); ++k)
    if (v[k]) axpy(F, out, v[k], A.row_vec(k));
  return out;
}

Mat rows_of(const Mat& A, const std::vector<size_t>& idx) {
  Mat B(idx.size(), A.cols());
  for (size_t i = 0; i < idx.size(); ++i) B.set_row(i, A.row_vec(idx[i]));
  return B;
}

// Basis positions of e_k A inside A.
std::vector<uint32_t> projective_index(const GradedAlgebra& A, uint32_t k) {
  std::vector<uint32_t> idx;
  for (uint32_t b = 0; b < A.dim(); ++b)
    if (A.left(b) == k) idx.push_back(b);
  return idx;
}

Vec to_algebra(const GradedAlgebra& A, const std::vector<uint32_t>& idx, const Vec& v) {
  Vec e(A.dim(), 0);
  for (size_t i = 0; i < idx.size(); ++i) e[idx[i]] = v[i];
  return e;
}

Vec from_algebra(const std::vector<uint32_t>& idx, const Vec& e) {
  Vec v(idx.size(), 0);
  for (size_t i = 0; i < idx.size(); ++i) v[i] = e[idx[i]];
  return v;
}

std::pair<int, int> degree_range(const GradedModule& M) {
  if (M.dim() == 0) return {0, -1};
  auto [lo, hi] = std::minmax_element(M.degree.begin(), M.degree.end());
  return {*lo, *hi};
}

}  // namespace

TranslationData translation_data(const EndAlgebra& E, int s) { return translation_data(E, wall_algebra(E, s)); }

TranslationData translation_data(const EndAlgebra& E, WallAlgebra wall) {
  TranslationData T;
  T.s = *wall.algebra.wall;
  T.wall = std::move(wall);
  T.bimodule = wall_as_right_module(E, T.wall);
  T.trace = wall_trace(E, T.wall);
  return T;
}

GradedModel build_model(std::shared_ptr<const WeylGroup> W, uint32_t ell) {
  GradedModel G;
  G.W = W;
  G.C = std::make_shared<CoinvariantAlgebra>(W, ell);
  G.E = endomorphism_algebra(G.C, W->family());
  for (int s = 0; s < W->rank(); ++s) G.walls.push_back(translation_data(G.E, s));
  return G;
}

GradedModel build_model(CartanType type, uint32_t ell) { return build_model(std::make_shared<WeylGroup>(type), ell); }

InducedModule translate_to_wall(const GradedModule& M, const TranslationData& T) {
  return induce(M, T.wall.algebra.algebra, T.wall.embedding);
}

GradedModule translate_from_wall(const GradedModule& N, const TranslationData& T, const AlgebraPtr& E) {
  return restrict_module(N, E, T.wall.embedding);
}

Mat translation_counit(const GradedModule& M, const InducedModule& TM, const TranslationData& T) {
  const Fp& F = M.A->field();
  Mat out(TM.module.dim(), M.dim());
  for (size_t t = 0; t < TM.module.dim(); ++t) {
    auto [g, b] = TM.free_basis[TM.kept[t]];
    Vec r(M.dim(), 0);
    const Vec& tr = T.trace[b];
    for (uint32_t a = 0; a < tr.size(); ++a)
      if (tr[a]) axpy(F, r, tr[a], M.action[a].row_vec(g));
    out.set_row(t, r);
  }
  return out;
}

GradedDims coinduced_dims(const GradedModule& M, const TranslationData& T) {
  const auto& B = *T.wall.algebra.algebra;
  GradedDims out;
  for (uint32_t g = 0; g < B.num_idempotents(); ++g) {
    std::vector<Vec> rows;
    for (uint32_t x = 0; x < B.dim(); ++x)
      if (B.left(x) == g) {
        Vec v(B.dim(), 0);
        v[x] = 1;
        rows.push_back(std::move(v));
      }
    for (const auto& [d, k] : hom_dims(submodule(T.bimodule, rows).module, M)) out[d] += k;
  }
  return out;
}

std::vector<GradedProjective> graded_projectives(const GradedModel& G, uint64_t seed) {
  const WeylGroup& W = *G.W;
  const GradedAlgebra& A = *G.E.algebra;
  const Fp& F = A.field();
  std::vector<Element> order(W.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return W.length(a) < W.length(b); });
  std::vector<GradedProjective> out;
  for (auto x : order) {
    const uint32_t k = static_cast<uint32_t>(x);
    GradedModule P = projective(G.E.algebra, k);
    auto idx = projective_index(A, k);
    Vec ek = from_algebra(idx, A.basis_vector(A.idempotent(k)));
    std::vector<GradedProjective> fresh;
    for (const Summand& S : decompose_module(P, seed + k)) {
      bool known = false;
      for (const auto& Q : out)
        if (isomorphic_up_to_shift(S.module, Q.module, seed)) {
          known = true;
          break;
        }
      if (known) continue;
      Vec eps = row_apply(F, row_apply(F, ek, S.projection), S.inclusion);
      GradedProjective Q;
      Q.x = x;
      Q.idempotent = {to_algebra(A, idx, eps), k};
      if (A.multiply(Q.idempotent.element, Q.idempotent.element) != Q.idempotent.element)
        throw std::logic_error("graded_projectives: summand idempotent is not idempotent");
      Q.module = generated_submodule(P, {eps}).module;
      Q.shift = -W.length(x);
      fresh.push_back(std::move(Q));
    }
    if (fresh.size() != 1)
      throw std::logic_error("graded_projectives: e_f E for " + W.to_string(x) + " has " + std::to_string(fresh.size()) +
                             " new indecomposable summands, expected 1");
    out.push_back(std::move(fresh.front()));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
  return out;
}

GradedModule graded_simple(const GradedModel& G, const GradedProjective& P) {
  const GradedAlgebra& A = *G.E.algebra;
  const Fp& F = A.field();
  const Vec& eps = P.idempotent.element;
  // V = eps E_0 eps, a local algebra; chi(v) is the scalar of v modulo its radical.
  RowSpace V(F, A.dim(), true);
  for (uint32_t b = 0; b < A.dim(); ++b)
    if (A.degree(b) == 0 && A.left(b) == P.idempotent.block && A.right(b) == P.idempotent.block)
      V.insert(A.multiply(A.multiply(eps, A.basis_vector(b)), eps));
  const auto& vb = V.accepted();
  const size_t m = vb.size();
  if (m % F.p() == 0) throw std::logic_error("graded_simple: corner dimension divisible by l");
  const uint32_t inv_m = F.inv(static_cast<uint32_t>(m % F.p()));
  Vec chi(m, 0);
  for (size_t i = 0; i < m; ++i) {
    uint32_t tr = 0;
    for (size_t j = 0; j < m; ++j) tr = F.add(tr, (*V.coords(A.multiply(vb[i], vb[j])))[j]);
    chi[i] = F.mul(tr, inv_m);
  }
  auto character = [&](const Vec& v) {
    auto co = V.coords(v);
    if (!co) throw std::logic_error("graded_simple: element outside the corner");
    uint32_t c = 0;
    for (size_t i = 0; i < m; ++i) c = F.add(c, F.mul((*co)[i], chi[i]));
    return c;
  };
  // P.module is a submodule of e_k E; recover each basis vector as an element of E.
  const uint32_t k = P.idempotent.block;
  auto idx = projective_index(A, k);
  GradedModule Pk = projective(G.E.algebra, k);
  SubModule Q = generated_submodule(Pk, {from_algebra(idx, eps)});
  const GradedModule& M = Q.module;
  std::vector<Vec> J;
  std::map<std::pair<int, uint32_t>, std::vector<size_t>> cells;
  for (size_t i = 0; i < M.dim(); ++i) cells[{M.degree[i], M.block[i]}].push_back(i);
  for (const auto& [cell, ids] : cells) {
    auto [d, t] = cell;
    std::vector<Vec> elems;
    for (size_t i : ids) elems.push_back(to_algebra(A, idx, Q.inclusion.row_vec(i)));
    // Functionals m -> chi(m a eps) for a in e_t E_{-d}.
    std::vector<Vec> eqs;
    for (uint32_t a = 0; a < A.dim(); ++a) {
      if (A.left(a) != t || A.degree(a) != -d) continue;
      Vec ae = A.multiply(A.basis_vector(a), eps);
      if (is_zero(ae)) continue;
      Vec row(ids.size(), 0);
      for (size_t i = 0; i < ids.size(); ++i) row[i] = character(A.multiply(elems[i], ae));
      if (!is_zero(row)) eqs.push_back(std::move(row));
    }
    Mat K = eqs.empty() ? Mat::identity(ids.size()) : nullspace(F, from_rows(ids.size(), eqs));
    for (size_t r = 0; r < K.rows(); ++r) {
      Vec v(M.dim(), 0);
      for (size_t i = 0; i < ids.size(); ++i) v[ids[i]] = K(r, i);
      J.push_back(std::move(v));
    }
  }
  return quotient(M, J).module;
}

GradedStandard graded_standard(const GradedModel& G, Element x, std::optional<Word> word) {
  const WeylGroup& W = *G.W;
  GradedStandard S;
  S.x = x;
  S.word = word ? *word : W.normal_form(x);
  if (W.from_word(S.word) != x || static_cast<int>(S.word.size()) != W.length(x))
    throw std::invalid_argument("graded_standard: word is not a reduced expression for " + W.to_string(x));
  S.module = projective(G.E.algebra, static_cast<uint32_t>(W.identity()));
  for (int s : S.word) {
    InducedModule TM = translate_to_wall(S.module, G.walls[s]);
    GradedModule R = translate_from_wall(TM.module, G.walls[s], G.E.algebra);
    if (rank(G.E.algebra->field(), TM.unit) != S.module.dim())
      throw std::logic_error("graded_standard: adjunction unit is not injective");
    S.module = shift(cokernel(S.module, R, TM.unit).module, 1);
  }
  return S;
}

const GradedStandard& StandardCache::get(Element x) {
  auto it = done_.find(x);
  if (it != done_.end()) return it->second;
  const WeylGroup& W = *G_.W;
  GradedStandard S;
  if (x == W.identity()) {
    S = graded_standard(G_, x);
  } else {
    const Word& w = W.normal_form(x);
    Word prefix(w.begin(), w.end() - 1);
    const GradedStandard& P = get(W.from_word(prefix));
    const int s = w.back();
    InducedModule TM = translate_to_wall(P.module, G_.walls[s]);
    GradedModule R = translate_from_wall(TM.module, G_.walls[s], G_.E.algebra);
    if (rank(G_.E.algebra->field(), TM.unit) != P.module.dim())
      throw std::logic_error("graded_standard: adjunction unit is not injective");
    S.x = x;
    S.word = w;
    S.module = shift(cokernel(P.module, R, TM.unit).module, 1);
  }
  return done_.emplace(x, std::move(S)).first->second;
}

StandardEmbedding standard_embedding(const GradedModel& G, const GradedStandard& Mx, int s) {
  const WeylGroup& W = *G.W;
  const Fp& F = G.E.algebra->field();
  if (W.length(W.mul_right(Mx.x, s)) < W.length(Mx.x))
    throw std::invalid_argument("standard_embedding: need xs > x");
  const TranslationData& T = G.walls[s];
  StandardEmbedding out;
  out.x = Mx.x;
  out.s = s;
  InducedModule TM = translate_to_wall(Mx.module, T);
  GradedModule R = translate_from_wall(TM.module, T, G.E.algebra);
  out.unit_injective = rank(F, TM.unit) == Mx.module.dim();
  Mat c = translation_counit(Mx.module, TM, T);
  if (!is_module_map(R, Mx.module, c)) throw std::logic_error("standard_embedding: counit is not a module map");
  out.composite_zero = mul(F, TM.unit, c).is_zero();
  QuotientModule Q = cokernel(Mx.module, R, TM.unit);
  out.map = rows_of(c, Q.kept);
  // Well defined on the cokernel: the projection followed by the induced map is c.
  out.injective = out.composite_zero && mul(F, Q.projection, out.map) == c && rank(F, out.map) == Q.module.dim() &&
                  Q.module.dim() > 0;
  return out;
}

std::vector<std::vector<HomEntry>> hom_standard_table(const GradedModel& G, StandardCache& S) {
  const size_t n = G.W->size();
  const Fp& F = G.E.algebra->field();
  std::vector<std::vector<HomEntry>> table(n, std::vector<HomEntry>(n));
  for (size_t x = 0; x < n; ++x)
    for (size_t y = 0; y < n; ++y) {
      const GradedModule& Mx = S.get(x).module;
      const GradedModule& My = S.get(y).module;
      auto [lx, hx] = degree_range(Mx);
      auto [ly, hy] = degree_range(My);
      HomEntry& e = table[x][y];
      for (int d = ly - hx; d <= hy - lx; ++d) {
        auto H = hom(Mx, My, d);
        if (H.empty()) continue;
        e.dim += H.size();
        e.shifts.push_back(d);
        for (const Mat& f : H)
          if (rank(F, f) != Mx.dim()) e.injective = false;
      }
    }
  return table;
}

std::map<std::pair<Element, int>, size_t> graded_multiplicities(const GradedModule& M,
                                                                          const std::vector<GradedProjective>& P) {
  const Fp& F = M.A->field();
  std::map<std::pair<Element, int>, size_t> out;
  for (const auto& Q : P) {
    Mat X = element_action(M, Q.idempotent.element);
    std::map<int, std::vector<Vec>> by_deg;
    for (size_t i = 0; i < M.dim(); ++i)
      if (M.block[i] == Q.idempotent.block) by_deg[M.degree[i]].push_back(X.row_vec(i));
    for (const auto& [d, rows] : by_deg) {
      size_t r = rank(F, from_rows(M.dim(), rows));
      if (r) out[{Q.x, d}] = r;
    }
  }
  return out;
}

CornerAlgebra koszul_dual_candidate(const GradedModel& G, const std::vector<GradedProjective>& P) {
  std::vector<PrimitiveIdempotent> idem;
  std::vector<int> shifts;
  for (const auto& Q : P) {
    idem.push_back(Q.idempotent);
    shifts.push_back(Q.shift);
  }
  return corner_algebra(G.E.algebra, idem, shifts);
}

ProjectivityReport wall_left_projective(const GradedModel& G, int s, uint64_t seed) {
  const GradedAlgebra& A = *G.E.algebra;
  const TranslationData& T = G.walls[s];
  const GradedAlgebra& B = *T.wall.algebra.algebra;
  const Fp& F = A.field();
  auto op = std::make_shared<GradedAlgebra>(A.opposite());
  // E^s with a acting by a . x, as a right module over the opposite algebra.
  GradedModule L;
  L.A = op;
  const size_t n = B.dim();
  for (uint32_t x = 0; x < n; ++x) {
    L.degree.push_back(B.degree(x));
    L.block.push_back(B.left(x));
  }
  L.action.assign(A.dim(), Mat(n, n));
  for (uint32_t a = 0; a < A.dim(); ++a) {
    uint32_t ia = T.wall.embedding[a];
    for (uint32_t x = 0; x < n; ++x) {
      if (B.right(ia) != B.left(x)) continue;
      for (const auto& [t, c] : B.product(ia, x)) L.action[a](x, t) = F.add(L.action[a](x, t), c);
    }
  }
  ProjectivityReport R;
  if (!L.check()) {
    R.reason = "left action fails the module axioms";
    return R;
  }
  // Indecomposable projectives of the opposite algebra: E eps_x.
  std::vector<GradedModule> proj;
  for (const auto& Q : graded_projectives(G, seed)) {
    GradedModule Pk = projective(op, Q.idempotent.block);
    auto idx = projective_index(*op, Q.idempotent.block);
    proj.push_back(generated_submodule(Pk, {from_algebra(idx, Q.idempotent.element)}).module);
  }
  auto parts = decompose_module(L, seed);
  R.summands = parts.size();
  for (const auto& S : parts) {
    bool hit = false;
    for (const auto& P : proj)
      if (isomorphic_up_to_shift(S.module, P, seed)) {
        hit = true;
        break;
      }
    if (!hit) {
      R.reason = "summand of dimension " + std::to_string(S.module.dim()) + " is not projective";
      return R;
    }
  }
  R.projective = true;
  R.reason = std::to_string(parts.size()) + " summands, each an indecomposable projective up to shift";
  return R;
}

}  // namespace mkd
