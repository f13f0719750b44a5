#include "mkd/galgebra.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mkd {

std::string dims_to_string(const GradedDims& d) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [deg, n] : d) {
    if (n == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (deg == 0) {
      os << n;
      continue;
    }
    if (n != 1) os << n;
    os << "q";
    if (deg != 1) os << "^" << deg;
  }
  if (first) os << "0";
  return os.str();
}

namespace {

Vec row_times(const Fp& F, const Vec& v, const Mat& A) {
  Vec out(A.cols(), 0);
  const uint64_t p = F.p();
  std::vector<uint64_t> acc(A.cols(), 0);
  for (size_t k = 0; k < v.size(); ++k) {
    if (!v[k]) continue;
    const uint32_t* r = A.row(k);
    for (size_t j = 0; j < A.cols(); ++j)
      if (r[j]) acc[j] = (acc[j] + static_cast<uint64_t>(v[k]) * r[j]) % p;
  }
  for (size_t j = 0; j < A.cols(); ++j) out[j] = static_cast<uint32_t>(acc[j]);
  return out;
}

void add_scaled(const Fp& F, Mat& Y, uint32_t a, const Mat& X) {
  auto& y = Y.data();
  const auto& x = X.data();
  for (size_t i = 0; i < y.size(); ++i)
    if (x[i]) y[i] = F.add(y[i], F.mul(a, x[i]));
}

Mat act(const GradedModule& M, const Vec& a) {
  const Fp& F = M.A->field();
  Mat R(M.dim(), M.dim());
  for (uint32_t b = 0; b < a.size(); ++b)
    if (a[b]) add_scaled(F, R, a[b], M.action[b]);
  return R;
}

using Cell = std::pair<int, uint32_t>;  // (degree, block)

std::optional<Cell> cell_of(const GradedModule& M, const Vec& v) {
  std::optional<Cell> c;
  for (size_t i = 0; i < v.size(); ++i) {
    if (!v[i]) continue;
    Cell ci{M.degree[i], M.block[i]};
    if (c && *c != ci) throw std::invalid_argument("vector is not homogeneous");
    c = ci;
  }
  return c;
}

// Split v into homogeneous components.
std::vector<Vec> components(const GradedModule& M, const Vec& v) {
  std::map<Cell, Vec> parts;
  for (size_t i = 0; i < v.size(); ++i) {
    if (!v[i]) continue;
    auto& w = parts[{M.degree[i], M.block[i]}];
    if (w.empty()) w.assign(v.size(), 0);
    w[i] = v[i];
  }
  std::vector<Vec> out;
  for (auto& [c, w] : parts) out.push_back(std::move(w));
  return out;
}

bool is_nilpotent(const Fp& F, const Mat& X) {
  Mat P = X;
  size_t n = X.rows();
  for (size_t k = 1; k < n; k *= 2) P = mul(F, P, P);
  return P.is_zero();
}

// Stable power X^m with m >= n, via repeated squaring until rank settles.
Mat stable_power(const Fp& F, const Mat& X) {
  Mat P = X;
  size_t r = rank(F, P);
  for (;;) {
    Mat Q = mul(F, P, P);
    size_t rq = rank(F, Q);
    if (rq == r) return Q;
    P = std::move(Q);
    r = rq;
  }
}

Poly poly_x(const Fp&) { return Poly{0, 1}; }

// A polynomial g with g(x) neither nilpotent nor invertible when the
// characteristic polynomial has two distinct irreducible factors.
std::optional<Poly> splitting_factor(const Fp& F, const Poly& chi, std::mt19937_64& rng) {
  if (chi.size() <= 2) return std::nullopt;
  const size_t deg = chi.size() - 1;
  Poly h = poly_x(F);
  for (size_t k = 1; k <= deg; ++k) {
    h = poly_powmod(F, h, F.p(), chi);
    Poly g = poly_gcd(F, chi, poly_sub(F, h, poly_x(F)));
    // g = product of the distinct irreducible factors of chi of degree dividing k
    if (g.size() <= 1) continue;
    // Does chi have an irreducible factor outside g?
    Poly r = chi;
    for (;;) {
      Poly q = poly_gcd(F, r, g);
      if (q.size() <= 1) break;
      r = poly_div(F, r, q);
    }
    if (r.size() > 1) return g;
    // All factors divide g. Split g itself if it has more than one factor.
    if (g.size() - 1 > k) {
      if (F.p() == 2) return std::nullopt;
      uint64_t e = 1;
      for (size_t i = 0; i < k; ++i) e *= F.p();
      e = (e - 1) / 2;
      std::uniform_int_distribution<uint32_t> dist(0, F.p() - 1);
      for (int attempt = 0; attempt < 64; ++attempt) {
        Poly a(g.size() - 1);
        for (auto& c : a) c = dist(rng);
        trim(a);
        if (a.empty()) continue;
        Poly t = poly_powmod(F, a, e, g);
        t = poly_sub(F, t, Poly{1});
        Poly d = poly_gcd(F, g, t);
        if (d.size() > 1 && d.size() < g.size()) return d;
      }
    }
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------------------
// GradedAlgebra

GradedAlgebra::GradedAlgebra(Fp F, std::vector<int> degree, std::vector<uint32_t> left, std::vector<uint32_t> right,
                             std::vector<uint32_t> idempotents, std::vector<SparseVec> table)
    : F_(F),
      degree_(std::move(degree)),
      left_(std::move(left)),
      right_(std::move(right)),
      idem_(std::move(idempotents)),
      table_(std::move(table)) {
  const size_t n = degree_.size();
  if (left_.size() != n || right_.size() != n || table_.size() != n * n)
    throw std::invalid_argument("GradedAlgebra: inconsistent sizes");
  for (uint32_t e : idem_)
    if (e >= n || degree_[e] != 0) throw std::invalid_argument("GradedAlgebra: bad idempotent");
  compute_generators();
}

Vec GradedAlgebra::basis_vector(uint32_t b) const {
  Vec v(dim(), 0);
  v[b] = 1;
  return v;
}

Vec GradedAlgebra::unit() const {
  Vec v(dim(), 0);
  for (uint32_t e : idem_) v[e] = 1;
  return v;
}

Vec GradedAlgebra::multiply(const Vec& a, const Vec& b) const {
  const size_t n = dim();
  std::vector<uint64_t> acc(n, 0);
  const uint64_t p = F_.p();
  for (uint32_t i = 0; i < n; ++i) {
    if (!a[i]) continue;
    for (uint32_t j = 0; j < n; ++j) {
      if (!b[j] || right_[i] != left_[j]) continue;
      const uint64_t c = static_cast<uint64_t>(a[i]) * b[j] % p;
      for (const auto& [k, v] : product(i, j)) acc[k] = (acc[k] + c * v) % p;
    }
  }
  Vec out(n);
  for (size_t k = 0; k < n; ++k) out[k] = static_cast<uint32_t>(acc[k]);
  return out;
}

void GradedAlgebra::compute_generators() {
  const size_t n = dim();
  std::vector<uint32_t> order(n);
  for (uint32_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) { return degree_[a] < degree_[b]; });
  RowSpace S(F_, n);
  std::vector<Vec> elems;
  gens_ = idem_;
  auto close = [&](std::vector<Vec> queue) {
    while (!queue.empty()) {
      Vec v = std::move(queue.back());
      queue.pop_back();
      for (uint32_t g : gens_) {
        Vec w = multiply(v, basis_vector(g));
        if (S.insert(w)) {
          elems.push_back(w);
          queue.push_back(std::move(w));
        }
      }
    }
  };
  if (S.insert(unit())) elems.push_back(unit());
  close(elems);
  for (uint32_t b : order) {
    if (S.contains(basis_vector(b))) continue;
    gens_.push_back(b);
    close(elems);
  }
}

GradedDims GradedAlgebra::graded_dims() const {
  GradedDims d;
  for (int x : degree_) ++d[x];
  return d;
}

bool GradedAlgebra::nonnegatively_graded() const {
  return std::all_of(degree_.begin(), degree_.end(), [](int d) { return d >= 0; });
}

int GradedAlgebra::top_degree() const { return degree_.empty() ? 0 : *std::max_element(degree_.begin(), degree_.end()); }

bool GradedAlgebra::check_associative() const {
  const uint32_t n = static_cast<uint32_t>(dim());
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j) {
      if (right_[i] != left_[j]) continue;
      Vec ij = multiply(basis_vector(i), basis_vector(j));
      for (uint32_t k = 0; k < n; ++k) {
        if (right_[j] != left_[k]) continue;
        if (multiply(ij, basis_vector(k)) != multiply(basis_vector(i), multiply(basis_vector(j), basis_vector(k))))
          return false;
      }
    }
  return true;
}

bool GradedAlgebra::check_unit() const {
  Vec one = unit();
  for (uint32_t b = 0; b < dim(); ++b) {
    if (multiply(one, basis_vector(b)) != basis_vector(b)) return false;
    if (multiply(basis_vector(b), one) != basis_vector(b)) return false;
  }
  for (size_t k = 0; k < idem_.size(); ++k)
    if (left_[idem_[k]] != k || right_[idem_[k]] != k) return false;
  return true;
}

GradedAlgebra GradedAlgebra::opposite() const {
  const size_t n = dim();
  std::vector<SparseVec> t(n * n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) t[j * n + i] = table_[i * n + j];
  return GradedAlgebra(F_, degree_, right_, left_, idem_, std::move(t));
}

// ---------------------------------------------------------------------------
// Modules

GradedDims GradedModule::graded_dims() const {
  GradedDims d;
  for (int x : degree) ++d[x];
  return d;
}

GradedDims GradedModule::graded_dims(uint32_t k) const {
  GradedDims d;
  for (size_t i = 0; i < dim(); ++i)
    if (block[i] == k) ++d[degree[i]];
  return d;
}

bool GradedModule::check() const {
  const Fp& F = A->field();
  if (action.size() != A->dim()) return false;
  for (uint32_t b = 0; b < A->dim(); ++b) {
    const Mat& R = action[b];
    if (R.rows() != dim() || R.cols() != dim()) return false;
    for (size_t i = 0; i < dim(); ++i)
      for (size_t j = 0; j < dim(); ++j) {
        if (!R(i, j)) continue;
        if (block[i] != A->left(b) || block[j] != A->right(b)) return false;
        if (degree[j] != degree[i] + A->degree(b)) return false;
      }
  }
  if (act(*this, A->unit()) != Mat::identity(dim())) return false;
  for (uint32_t g : A->generators())
    for (uint32_t b = 0; b < A->dim(); ++b) {
      if (A->right(g) != A->left(b)) continue;
      if (mul(F, action[g], action[b]) != act(*this, A->multiply(A->basis_vector(g), A->basis_vector(b)))) return false;
    }
  return true;
}

Mat element_action(const GradedModule& M, const Vec& a) { return act(M, a); }

GradedModule projective(const AlgebraPtr& A, uint32_t k) {
  const Fp& F = A->field();
  std::vector<uint32_t> idx;
  std::vector<int> pos(A->dim(), -1);
  for (uint32_t b = 0; b < A->dim(); ++b)
    if (A->left(b) == k) {
      pos[b] = static_cast<int>(idx.size());
      idx.push_back(b);
    }
  GradedModule M;
  M.A = A;
  for (uint32_t b : idx) {
    M.degree.push_back(A->degree(b));
    M.block.push_back(A->right(b));
  }
  const size_t d = idx.size();
  M.action.assign(A->dim(), Mat(d, d));
  for (size_t r = 0; r < d; ++r)
    for (uint32_t a = 0; a < A->dim(); ++a) {
      if (A->right(idx[r]) != A->left(a)) continue;
      for (const auto& [t, c] : A->product(idx[r], a)) M.action[a](r, pos[t]) = F.add(M.action[a](r, pos[t]), c);
    }
  return M;
}

GradedModule regular(const AlgebraPtr& A) {
  GradedModule M = zero_module(A);
  for (uint32_t k = 0; k < A->num_idempotents(); ++k) M = direct_sum(M, projective(A, k));
  return M;
}

GradedModule zero_module(const AlgebraPtr& A) {
  GradedModule M;
  M.A = A;
  M.action.assign(A->dim(), Mat(0, 0));
  return M;
}

GradedModule shift(const GradedModule& M, int n) {
  GradedModule N = M;
  for (auto& d : N.degree) d += n;
  return N;
}

GradedModule direct_sum(const GradedModule& M, const GradedModule& N) {
  if (M.A != N.A) throw std::invalid_argument("direct_sum: different algebras");
  GradedModule S;
  S.A = M.A;
  S.degree = M.degree;
  S.degree.insert(S.degree.end(), N.degree.begin(), N.degree.end());
  S.block = M.block;
  S.block.insert(S.block.end(), N.block.begin(), N.block.end());
  const size_t m = M.dim(), d = m + N.dim();
  S.action.assign(M.A->dim(), Mat(d, d));
  for (size_t b = 0; b < M.A->dim(); ++b) {
    for (size_t i = 0; i < m; ++i)
      for (size_t j = 0; j < m; ++j) S.action[b](i, j) = M.action[b](i, j);
    for (size_t i = 0; i < N.dim(); ++i)
      for (size_t j = 0; j < N.dim(); ++j) S.action[b](m + i, m + j) = N.action[b](i, j);
  }
  return S;
}

GradedModule v_forget(const GradedModule& M) {
  GradedModule N = M;
  std::fill(N.degree.begin(), N.degree.end(), 0);
  return N;
}

namespace {

// Generators g_i of M (basis vectors), the cover sum g_i e_{t_i} A -> M and
// its relations.
struct Presentation {
  std::vector<uint32_t> gen;                               // basis index in M
  std::vector<std::pair<size_t, uint32_t>> cover;          // (generator, algebra basis element)
  std::vector<Vec> relations;                              // over the cover basis, homogeneous
  std::vector<Vec> section;                                // M basis vector -> cover combination
};

Presentation present(const GradedModule& M) {
  const Fp& F = M.A->field();
  const GradedAlgebra& A = *M.A;
  Presentation P;
  const size_t n = M.dim();
  RowSpace span(F, n);
  // Greedy generators in order of degree.
  std::vector<uint32_t> order(n);
  for (uint32_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) { return M.degree[a] < M.degree[b]; });
  Vec e(n, 0);
  for (uint32_t i : order) {
    std::fill(e.begin(), e.end(), 0);
    e[i] = 1;
    if (span.contains(e)) continue;
    P.gen.push_back(i);
    for (uint32_t b = 0; b < A.dim(); ++b)
      if (A.left(b) == M.block[i]) span.insert(M.action[b].row_vec(i));
  }
  for (size_t g = 0; g < P.gen.size(); ++g)
    for (uint32_t b = 0; b < A.dim(); ++b)
      if (A.left(b) == M.block[P.gen[g]]) P.cover.emplace_back(g, b);
  const size_t c = P.cover.size();
  // Group cover basis by cell, compute relations and a section per cell.
  std::map<Cell, std::vector<size_t>> cells;
  for (size_t k = 0; k < c; ++k) {
    auto [g, b] = P.cover[k];
    cells[{M.degree[P.gen[g]] + A.degree(b), A.right(b)}].push_back(k);
  }
  P.section.assign(n, Vec(c, 0));
  for (const auto& [cell, ks] : cells) {
    RowSpace img(F, n, true);
    std::vector<size_t> accepted;
    for (size_t k : ks) {
      auto [g, b] = P.cover[k];
      Vec v = M.action[b].row_vec(P.gen[g]);
      if (img.insert(v)) {
        accepted.push_back(k);
      } else {
        // Relation: cover element k minus its expression in accepted ones.
        auto co = img.coords(v);
        Vec rel(c, 0);
        rel[k] = 1;
        for (size_t a = 0; a < accepted.size(); ++a) rel[accepted[a]] = F.neg((*co)[a]);
        P.relations.push_back(std::move(rel));
      }
    }
    for (size_t i = 0; i < n; ++i) {
      if (M.degree[i] != cell.first || M.block[i] != cell.second) continue;
      Vec ei(n, 0);
      ei[i] = 1;
      auto co = img.coords(ei);
      if (!co) throw std::logic_error("present: generators do not span");
      for (size_t a = 0; a < accepted.size(); ++a) P.section[i][accepted[a]] = (*co)[a];
    }
  }
  return P;
}

std::vector<Mat> hom_with(const Presentation& P, const GradedModule& M, const GradedModule& N, int d) {
  const Fp& F = M.A->field();
  // Unknowns: images of generator g in N e_{t_g} of degree deg(g) + d.
  std::vector<std::vector<uint32_t>> targets(P.gen.size());
  std::vector<size_t> offset(P.gen.size() + 1, 0);
  for (size_t g = 0; g < P.gen.size(); ++g) {
    for (uint32_t j = 0; j < N.dim(); ++j)
      if (N.block[j] == M.block[P.gen[g]] && N.degree[j] == M.degree[P.gen[g]] + d) targets[g].push_back(j);
    offset[g + 1] = offset[g] + targets[g].size();
  }
  const size_t nu = offset.back();
  if (nu == 0) return {};
  // Each relation sum_k r_k (g_k . b_k) = 0 yields dim N equations.
  std::vector<Vec> eqs;
  for (const Vec& rel : P.relations) {
    std::vector<Vec> rows(N.dim(), Vec(nu, 0));
    bool any = false;
    for (size_t k = 0; k < rel.size(); ++k) {
      if (!rel[k]) continue;
      auto [g, b] = P.cover[k];
      const Mat& R = N.action[b];
      for (size_t t = 0; t < targets[g].size(); ++t) {
        const uint32_t* row = R.row(targets[g][t]);
        for (size_t col = 0; col < N.dim(); ++col)
          if (row[col]) {
            auto& x = rows[col][offset[g] + t];
            x = F.add(x, F.mul(rel[k], row[col]));
            any = true;
          }
      }
    }
    if (!any) continue;
    for (auto& r : rows)
      if (!is_zero(r)) eqs.push_back(std::move(r));
  }
  Mat K;
  if (eqs.empty()) {
    K = Mat::identity(nu);
  } else {
    K = nullspace(F, from_rows(nu, eqs));
  }
  std::vector<Mat> out;
  for (size_t s = 0; s < K.rows(); ++s) {
    // Image of each cover basis element, then of each M basis vector.
    Mat X(M.dim(), N.dim());
    std::vector<Vec> gimg(P.gen.size(), Vec(N.dim(), 0));
    for (size_t g = 0; g < P.gen.size(); ++g)
      for (size_t t = 0; t < targets[g].size(); ++t) gimg[g][targets[g][t]] = K(s, offset[g] + t);
    std::vector<Vec> cimg(P.cover.size());
    for (size_t k = 0; k < P.cover.size(); ++k) {
      auto [g, b] = P.cover[k];
      cimg[k] = row_times(F, gimg[g], N.action[b]);
    }
    for (size_t i = 0; i < M.dim(); ++i) {
      Vec r(N.dim(), 0);
      for (size_t k = 0; k < P.cover.size(); ++k)
        if (P.section[i][k]) axpy(F, r, P.section[i][k], cimg[k]);
      X.set_row(i, r);
    }
    out.push_back(std::move(X));
  }
  return out;
}

}  // namespace

std::vector<Mat> hom(const GradedModule& M, const GradedModule& N, int d) {
  if (M.A != N.A) throw std::invalid_argument("hom: modules over different algebras");
  if (M.dim() == 0 || N.dim() == 0) return {};
  return hom_with(present(M), M, N, d);
}

GradedDims hom_dims(const GradedModule& M, const GradedModule& N) {
  GradedDims out;
  if (M.dim() == 0 || N.dim() == 0) return out;
  Presentation P = present(M);
  std::set<int> ds;
  for (int a : M.degree)
    for (int b : N.degree) ds.insert(b - a);
  for (int d : ds) {
    size_t k = hom_with(P, M, N, d).size();
    if (k) out[d] = k;
  }
  return out;
}

bool is_module_map(const GradedModule& M, const GradedModule& N, const Mat& f) {
  const Fp& F = M.A->field();
  for (uint32_t b = 0; b < M.A->dim(); ++b)
    if (mul(F, M.action[b], f) != mul(F, f, N.action[b])) return false;
  return true;
}

SubModule submodule(const GradedModule& M, const std::vector<Vec>& rows) {
  const Fp& F = M.A->field();
  std::map<Cell, RowSpace> cells;
  for (const Vec& v : rows) {
    auto c = cell_of(M, v);
    if (!c) continue;
    cells.try_emplace(*c, F, M.dim(), true).first->second.insert(v);
  }
  SubModule S;
  S.module.A = M.A;
  std::map<Cell, size_t> offset;
  std::vector<Vec> basis;
  for (const auto& [c, rs] : cells) {
    offset[c] = basis.size();
    for (const Vec& v : rs.accepted()) {
      basis.push_back(v);
      S.module.degree.push_back(c.first);
      S.module.block.push_back(c.second);
    }
  }
  const size_t k = basis.size();
  S.inclusion = from_rows(M.dim(), basis);
  if (k == 0) S.inclusion = Mat(0, M.dim());
  S.module.action.assign(M.A->dim(), Mat(k, k));
  for (uint32_t b = 0; b < M.A->dim(); ++b) {
    const GradedAlgebra& A = *M.A;
    for (size_t i = 0; i < k; ++i) {
      if (S.module.block[i] != A.left(b)) continue;
      Vec w = row_times(F, basis[i], M.action[b]);
      if (is_zero(w)) continue;
      Cell c{S.module.degree[i] + A.degree(b), A.right(b)};
      auto it = cells.find(c);
      std::optional<Vec> co;
      if (it != cells.end()) co = it->second.coords(w);
      if (!co) throw std::invalid_argument("submodule: span is not stable under the action");
      for (size_t t = 0; t < co->size(); ++t) S.module.action[b](i, offset[c] + t) = (*co)[t];
    }
  }
  return S;
}

SubModule generated_submodule(const GradedModule& M, const std::vector<Vec>& rows) {
  std::vector<Vec> all;
  for (const Vec& v0 : rows)
    for (const Vec& v : components(M, v0)) {
      auto c = cell_of(M, v);
      for (uint32_t b = 0; b < M.A->dim(); ++b)
        if (M.A->left(b) == c->second) {
          Vec w = row_times(M.A->field(), v, M.action[b]);
          if (!is_zero(w)) all.push_back(std::move(w));
        }
    }
  return submodule(M, all);
}

QuotientModule quotient(const GradedModule& M, const std::vector<Vec>& rows) {
  const Fp& F = M.A->field();
  RowSpace S(F, M.dim());
  for (const Vec& v : rows)
    for (const Vec& w : components(M, v)) S.insert(w);
  auto keep = S.free_columns();
  QuotientModule Q;
  Q.module.A = M.A;
  const size_t q = keep.size();
  for (size_t j : keep) {
    Q.module.degree.push_back(M.degree[j]);
    Q.module.block.push_back(M.block[j]);
  }
  Q.kept = keep;
  Q.projection = Mat(M.dim(), q);
  for (size_t i = 0; i < M.dim(); ++i) {
    Vec e(M.dim(), 0);
    e[i] = 1;
    Vec r = S.reduce(e);
    for (size_t t = 0; t < q; ++t) Q.projection(i, t) = r[keep[t]];
  }
  Q.module.action.assign(M.A->dim(), Mat(q, q));
  for (uint32_t b = 0; b < M.A->dim(); ++b)
    for (size_t t = 0; t < q; ++t) {
      if (M.block[keep[t]] != M.A->left(b)) continue;
      Vec r = S.reduce(M.action[b].row_vec(keep[t]));
      for (size_t u = 0; u < q; ++u) Q.module.action[b](t, u) = r[keep[u]];
    }
  return Q;
}

InducedModule induce(const GradedModule& M, const AlgebraPtr& B, const std::vector<uint32_t>& embedding) {
  const Fp& F = B->field();
  if (embedding.size() != M.A->dim()) throw std::invalid_argument("induce: embedding size differs from the algebra");
  Presentation P = present(M);
  InducedModule I;
  GradedModule Fr;
  Fr.A = B;
  std::map<std::pair<size_t, uint32_t>, size_t> pos;
  for (size_t g = 0; g < P.gen.size(); ++g)
    for (uint32_t b = 0; b < B->dim(); ++b) {
      if (B->left(b) != M.block[P.gen[g]]) continue;
      pos[{g, b}] = I.free_basis.size();
      I.free_basis.emplace_back(P.gen[g], b);
      Fr.degree.push_back(M.degree[P.gen[g]] + B->degree(b));
      Fr.block.push_back(B->right(b));
    }
  const size_t n = I.free_basis.size();
  Fr.action.assign(B->dim(), Mat(n, n));
  for (size_t r = 0; r < n; ++r) {
    auto [gi, b] = I.free_basis[r];
    size_t g = std::find(P.gen.begin(), P.gen.end(), gi) - P.gen.begin();
    for (uint32_t c = 0; c < B->dim(); ++c) {
      if (B->right(b) != B->left(c)) continue;
      for (const auto& [t, v] : B->product(b, c)) {
        size_t col = pos.at({g, t});
        Fr.action[c](r, col) = F.add(Fr.action[c](r, col), v);
      }
    }
  }
  auto push = [&](const Vec& over_cover) {
    Vec v(n, 0);
    for (size_t k = 0; k < over_cover.size(); ++k) {
      if (!over_cover[k]) continue;
      auto [g, a] = P.cover[k];
      size_t col = pos.at({g, embedding[a]});
      v[col] = F.add(v[col], over_cover[k]);
    }
    return v;
  };
  std::vector<Vec> rels;
  for (const Vec& r : P.relations) {
    Vec v = push(r);
    if (!is_zero(v)) rels.push_back(std::move(v));
  }
  SubModule R = generated_submodule(Fr, rels);
  std::vector<Vec> rows;
  for (size_t i = 0; i < R.inclusion.rows(); ++i) rows.push_back(R.inclusion.row_vec(i));
  QuotientModule Q = quotient(Fr, rows);
  I.module = std::move(Q.module);
  I.kept = std::move(Q.kept);
  I.unit = Mat(M.dim(), I.module.dim());
  for (size_t i = 0; i < M.dim(); ++i) I.unit.set_row(i, row_times(F, push(P.section[i]), Q.projection));
  return I;
}

GradedModule restrict_module(const GradedModule& N, const AlgebraPtr& A, const std::vector<uint32_t>& embedding) {
  GradedModule M;
  M.A = A;
  M.degree = N.degree;
  M.block = N.block;
  M.action.reserve(A->dim());
  for (uint32_t a = 0; a < A->dim(); ++a) M.action.push_back(N.action[embedding[a]]);
  return M;
}

SubModule kernel(const GradedModule& M, const GradedModule& N, const Mat& f) {
  (void)N;
  const Fp& F = M.A->field();
  std::map<Cell, std::vector<size_t>> cells;
  for (size_t i = 0; i < M.dim(); ++i) cells[{M.degree[i], M.block[i]}].push_back(i);
  std::vector<Vec> rows;
  for (const auto& [c, idx] : cells) {
    // Vectors v on idx with v f = 0: nullspace of the transposed restriction.
    Mat T(f.cols(), idx.size());
    for (size_t a = 0; a < idx.size(); ++a)
      for (size_t j = 0; j < f.cols(); ++j) T(j, a) = f(idx[a], j);
    Mat K = nullspace(F, T);
    for (size_t r = 0; r < K.rows(); ++r) {
      Vec v(M.dim(), 0);
      for (size_t a = 0; a < idx.size(); ++a) v[idx[a]] = K(r, a);
      rows.push_back(std::move(v));
    }
  }
  return submodule(M, rows);
}

SubModule image(const GradedModule& M, const GradedModule& N, const Mat& f) {
  std::vector<Vec> rows;
  for (size_t i = 0; i < M.dim(); ++i) {
    Vec r = f.row_vec(i);
    if (!is_zero(r)) rows.push_back(std::move(r));
  }
  return submodule(N, rows);
}

QuotientModule cokernel(const GradedModule& M, const GradedModule& N, const Mat& f) {
  std::vector<Vec> rows;
  for (size_t i = 0; i < M.dim(); ++i) rows.push_back(f.row_vec(i));
  return quotient(N, rows);
}

SubModule radical(const GradedModule& M) {
  std::vector<Vec> rows;
  for (uint32_t b = 0; b < M.A->dim(); ++b) {
    if (M.A->degree(b) <= 0) continue;
    for (size_t i = 0; i < M.dim(); ++i) {
      Vec r = M.action[b].row_vec(i);
      if (!is_zero(r)) rows.push_back(std::move(r));
    }
  }
  return submodule(M, rows);
}

// ---------------------------------------------------------------------------
// Krull-Schmidt

namespace {

Mat random_combination(const Fp& F, const std::vector<Mat>& H, std::mt19937_64& rng) {
  std::uniform_int_distribution<uint32_t> dist(0, F.p() - 1);
  Mat X(H[0].rows(), H[0].cols());
  for (const Mat& h : H) add_scaled(F, X, dist(rng), h);
  return X;
}

void split_into(const GradedModule& M, std::mt19937_64& rng, std::vector<Summand>& out) {
  const Fp& F = M.A->field();
  const size_t n = M.dim();
  if (n == 0) return;
  auto H = hom(M, M, 0);
  if (H.size() > 1) {
    const size_t tries = H.size() + 24;
    for (size_t t = 0; t < tries; ++t) {
      Mat x = t < H.size() ? H[t] : random_combination(F, H, rng);
      Poly chi = charpoly(F, x);
      auto g = splitting_factor(F, chi, rng);
      if (!g) continue;
      Mat y = stable_power(F, poly_eval(F, *g, x));
      SubModule U = kernel(M, M, y);
      SubModule V = image(M, M, y);
      if (U.module.dim() == 0 || V.module.dim() == 0) continue;
      // M = U + V; projections from the inverse of the stacked inclusions.
      Mat T(n, n);
      for (size_t i = 0; i < U.module.dim(); ++i) T.set_row(i, U.inclusion.row_vec(i));
      for (size_t i = 0; i < V.module.dim(); ++i) T.set_row(U.module.dim() + i, V.inclusion.row_vec(i));
      auto Ti = inverse(F, T);
      if (!Ti) throw std::logic_error("decompose: Fitting summands do not span");
      Mat pu(n, U.module.dim()), pv(n, V.module.dim());
      for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < U.module.dim(); ++j) pu(i, j) = (*Ti)(i, j);
        for (size_t j = 0; j < V.module.dim(); ++j) pv(i, j) = (*Ti)(i, U.module.dim() + j);
      }
      for (auto [S, p] : {std::pair<SubModule*, Mat*>{&U, &pu}, std::pair<SubModule*, Mat*>{&V, &pv}}) {
        std::vector<Summand> part;
        split_into(S->module, rng, part);
        for (auto& s : part)
          out.push_back(Summand{std::move(s.module), mul(F, s.inclusion, S->inclusion), mul(F, *p, s.projection)});
      }
      return;
    }
  }
  out.push_back(Summand{M, Mat::identity(n), Mat::identity(n)});
}

}  // namespace

std::vector<Summand> decompose_module(const GradedModule& M, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Summand> out;
  split_into(M, rng, out);
  return out;
}

bool endomorphisms_local(const GradedModule& M, uint64_t seed) {
  const Fp& F = M.A->field();
  if (M.dim() == 0) return false;
  auto H = hom(M, M, 0);
  std::mt19937_64 rng(seed);
  for (size_t t = 0; t < H.size() + 24; ++t) {
    Mat x = t < H.size() ? H[t] : random_combination(F, H, rng);
    if (rank(F, x) != M.dim() && !is_nilpotent(F, x)) return false;
  }
  return true;
}

bool isomorphic(const GradedModule& M, const GradedModule& N, uint64_t seed) {
  if (M.dim() != N.dim()) return false;
  for (uint32_t k = 0; k < M.A->num_idempotents(); ++k)
    if (M.graded_dims(k) != N.graded_dims(k)) return false;
  if (M.dim() == 0) return true;
  const Fp& F = M.A->field();
  auto H = hom(M, N, 0);
  if (H.empty()) return false;
  std::mt19937_64 rng(seed);
  for (size_t t = 0; t < H.size() + 24; ++t) {
    Mat x = t < H.size() ? H[t] : random_combination(F, H, rng);
    if (rank(F, x) == M.dim()) return true;
  }
  return false;
}

std::optional<int> isomorphic_up_to_shift(const GradedModule& M, const GradedModule& N, uint64_t seed) {
  if (M.dim() != N.dim()) return std::nullopt;
  if (M.dim() == 0) return 0;
  int n = *std::min_element(M.degree.begin(), M.degree.end()) - *std::min_element(N.degree.begin(), N.degree.end());
  if (isomorphic(M, shift(N, n), seed)) return n;
  return std::nullopt;
}

std::vector<PrimitiveIdempotent> primitive_idempotents(const AlgebraPtr& A, uint64_t seed) {
  const Fp& F = A->field();
  std::vector<PrimitiveIdempotent> out;
  for (uint32_t k = 0; k < A->num_idempotents(); ++k) {
    GradedModule P = projective(A, k);
    // Position of e_k in the basis of e_k A.
    std::vector<uint32_t> idx;
    for (uint32_t b = 0; b < A->dim(); ++b)
      if (A->left(b) == k) idx.push_back(b);
    Vec ek(P.dim(), 0);
    for (size_t i = 0; i < idx.size(); ++i)
      if (idx[i] == A->idempotent(k)) ek[i] = 1;
    for (const auto& s : decompose_module(P, seed + k)) {
      Vec v = row_times(F, row_times(F, ek, s.projection), s.inclusion);
      Vec e(A->dim(), 0);
      for (size_t i = 0; i < idx.size(); ++i) e[idx[i]] = v[i];
      out.push_back({std::move(e), k});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Koszulity

namespace {

// Degree-0 corner eps A_0 eps as a list of vectors.
std::vector<Vec> corner_degree0(const GradedAlgebra& A, const Vec& eps) {
  RowSpace S(A.field(), A.dim(), true);
  for (uint32_t b = 0; b < A.dim(); ++b) {
    if (A.degree(b) != 0) continue;
    S.insert(A.multiply(A.multiply(eps, A.basis_vector(b)), eps));
  }
  return S.accepted();
}

Vec algebra_pow(const GradedAlgebra& A, Vec a, uint64_t e, const Vec& one) {
  Vec r = one;
  while (e) {
    if (e & 1) r = A.multiply(r, a);
    a = A.multiply(a, a);
    e >>= 1;
  }
  return r;
}

}  // namespace

SemisimpleReport degree_zero_semisimple(const AlgebraPtr& A) {
  SemisimpleReport R;
  const GradedAlgebra& Al = *A;
  const Fp& F = Al.field();
  R.idempotents = primitive_idempotents(A);
  auto& E = R.idempotents;
  // Projective summands eps A; isomorphism classes.
  std::vector<GradedModule> P;
  for (const auto& e : E) {
    GradedModule full = projective(A, e.block);
    std::vector<uint32_t> idx;
    for (uint32_t b = 0; b < Al.dim(); ++b)
      if (Al.left(b) == e.block) idx.push_back(b);
    Vec v(idx.size(), 0);
    for (size_t i = 0; i < idx.size(); ++i) v[i] = e.element[idx[i]];
    P.push_back(generated_submodule(full, {v}).module);
  }
  for (size_t i = 0; i < E.size(); ++i)
    for (size_t j = 0; j < E.size(); ++j) {
      if (i == j) continue;
      bool iso = isomorphic(P[i], P[j]);
      if (iso) continue;
      // eps_i A_0 eps_j must vanish for non-isomorphic summands.
      for (uint32_t b = 0; b < Al.dim(); ++b) {
        if (Al.degree(b) != 0) continue;
        Vec w = Al.multiply(Al.multiply(E[i].element, Al.basis_vector(b)), E[j].element);
        if (!is_zero(w)) {
          R.reason = "degree-0 maps between non-isomorphic indecomposable projectives";
          return R;
        }
      }
    }
  for (const auto& e : E) {
    auto B = corner_degree0(Al, e.element);
    for (const auto& a : B)
      for (const auto& b : B)
        if (Al.multiply(a, b) != Al.multiply(b, a)) {
          R.reason = "non-commutative local corner in degree 0";
          return R;
        }
    // Frobenius r -> r^(l^k) is linear on a commutative algebra; its kernel is the radical.
    uint64_t e_pow = F.p();
    while (e_pow < B.size() + 1) e_pow *= F.p();
    std::vector<Vec> images;
    for (const auto& a : B) images.push_back(algebra_pow(Al, a, e_pow, e.element));
    RowSpace img(F, Al.dim());
    for (const auto& v : images) img.insert(v);
    if (img.dim() != B.size()) {
      R.reason = "degree-0 corner has a nonzero radical";
      return R;
    }
  }
  R.semisimple = true;
  return R;
}

namespace {

struct CoverStep {
  GradedModule cover;
  Mat map;  // cover -> K
  std::vector<std::pair<int, size_t>> gens;  // (degree, primitive index)
};

GradedModule primitive_projective(const AlgebraPtr& A, const PrimitiveIdempotent& e, std::vector<Vec>* basis_in_A) {
  const GradedAlgebra& Al = *A;
  GradedModule full = projective(A, e.block);
  std::vector<uint32_t> idx;
  for (uint32_t b = 0; b < Al.dim(); ++b)
    if (Al.left(b) == e.block) idx.push_back(b);
  Vec v(idx.size(), 0);
  for (size_t i = 0; i < idx.size(); ++i) v[i] = e.element[idx[i]];
  SubModule S = generated_submodule(full, {v});
  if (basis_in_A) {
    basis_in_A->clear();
    for (size_t r = 0; r < S.inclusion.rows(); ++r) {
      Vec a(Al.dim(), 0);
      for (size_t i = 0; i < idx.size(); ++i) a[idx[i]] = S.inclusion(r, i);
      basis_in_A->push_back(std::move(a));
    }
  }
  return S.module;
}

// Minimal graded projective cover of K built from the primitive idempotents.
CoverStep minimal_cover(const GradedModule& K, const std::vector<PrimitiveIdempotent>& E,
                        const std::vector<GradedModule>& Pe, const std::vector<std::vector<Vec>>& Pe_basis) {
  const Fp& F = K.A->field();
  CoverStep C;
  C.cover = zero_module(K.A);
  const size_t n = K.dim();
  RowSpace span(F, n);
  SubModule rad = radical(K);
  for (size_t r = 0; r < rad.inclusion.rows(); ++r) span.insert(rad.inclusion.row_vec(r));
  std::vector<uint32_t> order(n);
  for (uint32_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) { return K.degree[a] < K.degree[b]; });
  std::vector<Vec> images;
  for (uint32_t i : order)
    for (size_t t = 0; t < E.size(); ++t) {
      if (E[t].block != K.block[i]) continue;
      Vec m = act(K, E[t].element).row_vec(i);
      if (is_zero(m) || span.contains(m)) continue;
      C.gens.emplace_back(K.degree[i], t);
      // Cover summand eps_t A <deg>, mapped by eps_t a -> m a.
      for (const Vec& a : Pe_basis[t]) {
        Vec w = row_times(F, m, act(K, a));
        images.push_back(w);
        span.insert(w);
      }
      C.cover = direct_sum(C.cover, shift(Pe[t], K.degree[i]));
    }
  C.map = images.empty() ? Mat(0, n) : from_rows(n, images);
  return C;
}

struct Resolution {
  std::vector<std::vector<std::pair<int, size_t>>> gens;
  bool finite = false;
};

Resolution resolve(const GradedModule& M, const std::vector<PrimitiveIdempotent>& E, int cap) {
  std::vector<GradedModule> Pe;
  std::vector<std::vector<Vec>> Pb(E.size());
  for (size_t t = 0; t < E.size(); ++t) Pe.push_back(primitive_projective(M.A, E[t], &Pb[t]));
  Resolution R;
  GradedModule K = M;
  for (int i = 0; i <= cap; ++i) {
    if (K.dim() == 0) {
      R.finite = true;
      break;
    }
    CoverStep C = minimal_cover(K, E, Pe, Pb);
    R.gens.push_back(C.gens);
    K = kernel(C.cover, K, C.map).module;
  }
  if (K.dim() == 0) R.finite = true;
  return R;
}

}  // namespace

KoszulReport koszulity_check(const AlgebraPtr& A, int cap) {
  KoszulReport R;
  R.cap = cap < 0 ? 2 * A->top_degree() : cap;
  R.nonneg_graded = A->nonnegatively_graded();
  if (!R.nonneg_graded) {
    R.verdict = "not Koszul-gradable as given: negative degrees";
    return R;
  }
  auto ss = degree_zero_semisimple(A);
  R.semisimple_deg0 = ss.semisimple;
  if (!ss.semisimple) {
    R.verdict = "not Koszul-gradable as given: " + ss.reason;
    return R;
  }
  // A_0 = A / A_+ as a right module.
  GradedModule reg = regular(A);
  std::vector<Vec> plus;
  for (size_t i = 0; i < reg.dim(); ++i)
    if (reg.degree[i] > 0) {
      Vec e(reg.dim(), 0);
      e[i] = 1;
      plus.push_back(std::move(e));
    }
  GradedModule A0 = quotient(reg, plus).module;
  Resolution res = resolve(A0, ss.idempotents, R.cap);
  R.finite = res.finite;
  R.linear = true;
  // Hom(eps_t A<deg>, A_0) = A_0 eps_t sits in internal degree -deg.
  std::vector<size_t> dim0;
  for (const auto& e : ss.idempotents) {
    RowSpace S(A->field(), A->dim());
    for (uint32_t b = 0; b < A->dim(); ++b)
      if (A->degree(b) == 0) S.insert(A->multiply(A->basis_vector(b), e.element));
    dim0.push_back(S.dim());
  }
  for (size_t i = 0; i < res.gens.size(); ++i) {
    std::map<int, size_t> row;
    bool lin = true;
    for (auto [deg, t] : res.gens[i]) {
      const size_t dim = dim0[t];
      row[-deg] += dim;
      if (deg != static_cast<int>(i)) lin = false;
    }
    R.ext.push_back(std::move(row));
    if (lin && R.linear) R.linear_up_to = static_cast<int>(i);
    if (!lin) R.linear = false;
  }
  if (R.finite) R.linear_up_to = R.cap;
  R.verdict = R.linear ? (R.finite ? "Koszul (finite linear resolutions)" : "linear up to cap " + std::to_string(R.cap))
                       : "not Koszul: non-linear syzygy in homological degree " + std::to_string(R.linear_up_to + 1);
  return R;
}

ModuleResolutionReport koszul_module_check(const GradedModule& M, int cap) {
  ModuleResolutionReport R;
  R.cap = cap < 0 ? 2 * M.A->top_degree() : cap;
  if (M.dim() == 0) {
    R.linear = true;
    R.finite = true;
    return R;
  }
  auto E = primitive_idempotents(M.A);
  Resolution res = resolve(M, E, R.cap);
  R.finite = res.finite;
  R.linear = true;
  std::set<int> g0;
  for (auto [deg, t] : res.gens[0]) g0.insert(deg);
  R.single_generator_degree = g0.size() == 1;
  R.generator_degree = *g0.begin();
  if (!R.single_generator_degree) R.linear = false;
  for (size_t i = 0; i < res.gens.size(); ++i) {
    std::map<int, size_t> row;
    for (auto [deg, t] : res.gens[i]) {
      ++row[deg];
      if (deg != R.generator_degree + static_cast<int>(i)) R.linear = false;
    }
    R.generators.push_back(std::move(row));
  }
  return R;
}

// ---------------------------------------------------------------------------
// Corner algebras

CornerAlgebra corner_algebra(const AlgebraPtr& A, const std::vector<PrimitiveIdempotent>& idem,
                             const std::vector<int>& shifts) {
  const GradedAlgebra& Al = *A;
  const Fp& F = Al.field();
  const size_t m = idem.size();
  if (shifts.size() != m) throw std::invalid_argument("corner_algebra: one shift per idempotent");
  std::vector<Vec> basis;
  std::vector<int> degree;
  std::vector<uint32_t> left, right, idx_of(m, 0);
  std::map<std::tuple<uint32_t, uint32_t, int>, std::pair<size_t, RowSpace>> blocks;
  for (uint32_t y = 0; y < m; ++y)
    for (uint32_t x = 0; x < m; ++x) {
      std::map<int, std::vector<Vec>> by_deg;
      if (y == x) by_deg[0].push_back(idem[y].element);
      for (uint32_t b = 0; b < Al.dim(); ++b) {
        if (Al.left(b) != idem[y].block || Al.right(b) != idem[x].block) continue;
        Vec v = Al.multiply(Al.multiply(idem[y].element, Al.basis_vector(b)), idem[x].element);
        if (!is_zero(v)) by_deg[Al.degree(b)].push_back(std::move(v));
      }
      for (auto& [d, vs] : by_deg) {
        RowSpace& rs = blocks.try_emplace({y, x, d}, basis.size(), RowSpace(F, Al.dim(), true)).first->second.second;
        for (auto& v : vs)
          if (rs.insert(v)) {
            if (y == x && d == 0 && rs.dim() == 1) idx_of[y] = static_cast<uint32_t>(basis.size());
            basis.push_back(v);
            degree.push_back(d + shifts[y] - shifts[x]);
            left.push_back(y);
            right.push_back(x);
          }
      }
    }
  const size_t n = basis.size();
  std::vector<SparseVec> table(n * n);
  std::vector<int> raw_deg(n);
  for (size_t i = 0; i < n; ++i) raw_deg[i] = degree[i] - shifts[left[i]] + shifts[right[i]];
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (right[i] != left[j]) continue;
      Vec p = Al.multiply(basis[i], basis[j]);
      if (is_zero(p)) continue;
      auto it = blocks.find({left[i], right[j], raw_deg[i] + raw_deg[j]});
      if (it == blocks.end()) throw std::logic_error("corner_algebra: product outside the corner");
      auto co = it->second.second.coords(p);
      if (!co) throw std::logic_error("corner_algebra: product outside the corner");
      for (size_t t = 0; t < co->size(); ++t)
        if ((*co)[t]) table[i * n + j].emplace_back(static_cast<uint32_t>(it->second.first + t), (*co)[t]);
    }
  CornerAlgebra K;
  K.basis = basis;
  K.algebra = std::make_shared<GradedAlgebra>(F, degree, left, right, idx_of, std::move(table));
  return K;
}

GradedModule corner_module(const GradedModule& M, const CornerAlgebra& K, const std::vector<PrimitiveIdempotent>& idem,
                           const std::vector<int>& shifts) {
  const Fp& F = M.A->field();
  GradedModule N;
  N.A = K.algebra;
  std::vector<Vec> basis;
  std::map<std::pair<uint32_t, int>, std::pair<size_t, RowSpace>> cells;  // (x, raw degree)
  std::vector<int> raw;
  for (uint32_t x = 0; x < idem.size(); ++x) {
    Mat ex = act(M, idem[x].element);
    std::map<int, std::vector<Vec>> by_deg;
    for (size_t i = 0; i < M.dim(); ++i) {
      Vec v = ex.row_vec(i);
      if (!is_zero(v)) by_deg[M.degree[i]].push_back(std::move(v));
    }
    for (auto& [d, vs] : by_deg) {
      auto& cell = cells.try_emplace({x, d}, basis.size(), RowSpace(F, M.dim(), true)).first->second;
      for (auto& v : vs)
        if (cell.second.insert(v)) {
          basis.push_back(v);
          raw.push_back(d);
          N.degree.push_back(d - shifts[x]);
          N.block.push_back(x);
        }
    }
  }
  const size_t n = basis.size();
  const GradedAlgebra& KA = *K.algebra;
  N.action.assign(KA.dim(), Mat(n, n));
  for (uint32_t k = 0; k < KA.dim(); ++k) {
    Mat R = act(M, K.basis[k]);
    int kd = KA.degree(k) - shifts[KA.left(k)] + shifts[KA.right(k)];
    for (size_t i = 0; i < n; ++i) {
      if (N.block[i] != KA.left(k)) continue;
      Vec w = row_times(F, basis[i], R);
      if (is_zero(w)) continue;
      auto it = cells.find({KA.right(k), raw[i] + kd});
      std::optional<Vec> co;
      if (it != cells.end()) co = it->second.second.coords(w);
      if (!co) throw std::logic_error("corner_module: action leaves M e");
      for (size_t t = 0; t < co->size(); ++t) N.action[k](i, it->second.first + t) = (*co)[t];
    }
  }
  return N;
}

// ---------------------------------------------------------------------------
// Shear

bool DgModule::check() const {
  const Fp& F = module.A->field();
  if (!mul(F, d, d).is_zero()) return false;
  for (size_t i = 0; i < d.rows(); ++i)
    for (size_t j = 0; j < d.cols(); ++j)
      if (d(i, j) && module.degree[j] != module.degree[i] + 1) return false;
  return is_module_map(module, module, d);
}

DgModule v_bar_shear(const ComplexOfModules& C) {
  DgModule D;
  if (C.terms.empty()) throw std::invalid_argument("v_bar_shear: empty complex");
  D.module = zero_module(C.terms[0].A);
  std::vector<size_t> off;
  for (size_t t = 0; t < C.terms.size(); ++t) {
    off.push_back(D.module.dim());
    D.module = direct_sum(D.module, shift(C.terms[t], C.first + static_cast<int>(t)));
  }
  const size_t n = D.module.dim();
  D.d = Mat(n, n);
  for (size_t t = 0; t + 1 < C.terms.size(); ++t) {
    const Mat& f = C.d[t];
    for (size_t i = 0; i < f.rows(); ++i)
      for (size_t j = 0; j < f.cols(); ++j) D.d(off[t] + i, off[t + 1] + j) = f(i, j);
  }
  return D;
}

ComplexOfModules shift_internal(const ComplexOfModules& C, int n) {
  ComplexOfModules S = C;
  for (auto& t : S.terms) t = shift(t, n);
  return S;
}

DgModule shift_cohomological(const DgModule& D, int n) {
  // (X[n])^k = X^{k+n}; the differential picks up the sign (-1)^n.
  DgModule S = D;
  S.module = shift(D.module, -n);
  if (n % 2) S.d = scale(D.module.A->field(), D.d, D.module.A->field().neg(1));
  return S;
}

}  // namespace mkd
