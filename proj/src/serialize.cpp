#include "mkd/serialize.hpp"

#include <stdexcept>

namespace mkd {

json to_json(const Mat& M) { return json{{"rows", M.rows()}, {"cols", M.cols()}, {"data", M.data()}}; }

Mat mat_from_json(const json& j) {
  Mat M(j.at("rows").get<size_t>(), j.at("cols").get<size_t>());
  auto data = j.at("data").get<std::vector<uint32_t>>();
  if (data.size() != M.data().size()) throw std::runtime_error("matrix payload has the wrong length");
  M.data() = std::move(data);
  return M;
}

json to_json(const GradedDims& d) {
  json j = json::object();
  for (const auto& [deg, n] : d) j[std::to_string(deg)] = n;
  return j;
}

json to_json(const BigradedDims& d) {
  json j = json::array();
  for (const auto& [b, n] : d) j.push_back({b.first, b.second, n});
  return j;
}

json to_json(const GradedAlgebra& A) {
  json table = json::array();
  for (uint32_t i = 0; i < A.dim(); ++i)
    for (uint32_t k = 0; k < A.dim(); ++k)
      for (const auto& [t, c] : A.product(i, k)) table.push_back({i, k, t, c});
  std::vector<uint32_t> left, right, idem;
  for (uint32_t b = 0; b < A.dim(); ++b) {
    left.push_back(A.left(b));
    right.push_back(A.right(b));
  }
  for (size_t k = 0; k < A.num_idempotents(); ++k) idem.push_back(A.idempotent(k));
  return json{{"p", A.field().p()}, {"degree", A.degrees()}, {"left", left},     {"right", right},
              {"idempotents", idem}, {"table", table}};
}

AlgebraPtr algebra_from_json(const json& j) {
  auto degree = j.at("degree").get<std::vector<int>>();
  const size_t n = degree.size();
  std::vector<SparseVec> table(n * n);
  for (const auto& e : j.at("table")) {
    auto i = e.at(0).get<uint32_t>(), k = e.at(1).get<uint32_t>();
    if (i >= n || k >= n) throw std::runtime_error("algebra payload index out of range");
    table[static_cast<size_t>(i) * n + k].emplace_back(e.at(2).get<uint32_t>(), e.at(3).get<uint32_t>());
  }
  return std::make_shared<GradedAlgebra>(Fp(j.at("p").get<uint32_t>()), std::move(degree),
                                         j.at("left").get<std::vector<uint32_t>>(),
                                         j.at("right").get<std::vector<uint32_t>>(),
                                         j.at("idempotents").get<std::vector<uint32_t>>(), std::move(table));
}

json to_json(const BigradedDgAlgebra& R) {
  json table = json::array();
  const size_t n = R.dim();
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k)
      for (const auto& [t, c] : R.table[i * n + k]) table.push_back({i, k, t, c});
  json bideg = json::array();
  for (const auto& b : R.bideg) bideg.push_back({b.first, b.second});
  return json{{"p", R.p}, {"bidegrees", bideg}, {"unit", R.unit}, {"table", table}, {"d", to_json(R.d)}};
}

namespace {

json end_to_json(const EndAlgebra& E) {
  json maps = json::array();
  for (const Mat& X : E.maps) maps.push_back(to_json(X));
  return json{{"algebra", to_json(*E.algebra)}, {"maps", maps}};
}

EndAlgebra end_from_json(const json& j, const GradedModel& G, std::optional<int> wall) {
  EndAlgebra E;
  E.C = G.C;
  E.family = G.W->family();
  E.wall = wall;
  for (const Word& f : E.family) E.modules.push_back(bott_samelson(*G.C, f));
  E.algebra = algebra_from_json(j.at("algebra"));
  for (const auto& m : j.at("maps")) E.maps.push_back(mat_from_json(m));
  if (E.maps.size() != E.algebra->dim()) throw std::runtime_error("one map per basis element expected");
  for (size_t b = 0; b < E.maps.size(); ++b) {
    const auto& X = E.maps[b];
    if (X.rows() != E.modules[E.algebra->right(b)].dim() || X.cols() != E.modules[E.algebra->left(b)].dim())
      throw std::runtime_error("map shape does not match its block");
  }
  return E;
}

}  // namespace

json model_to_json(const GradedModel& G) {
  json family = json::array();
  for (const Word& f : G.E.family) family.push_back(G.W->word_to_string(f));
  json walls = json::array();
  for (const auto& T : G.walls) {
    json w = end_to_json(T.wall.algebra);
    w["s"] = T.s;
    w["embedding"] = T.wall.embedding;
    walls.push_back(std::move(w));
  }
  return json{{"type", to_string(G.W->type())},
              {"ell", G.C->field().p()},
              {"family", family},
              {"E", end_to_json(G.E)},
              {"walls", walls}};
}

GradedModel model_from_json(const json& j, std::shared_ptr<const WeylGroup> W, uint32_t ell) {
  if (j.at("type").get<std::string>() != to_string(W->type()) || j.at("ell").get<uint32_t>() != ell)
    throw std::runtime_error("payload is for a different type or prime");
  GradedModel G;
  G.W = W;
  G.C = std::make_shared<CoinvariantAlgebra>(W, ell);
  auto fam = j.at("family");
  const auto family = W->family();
  if (fam.size() != family.size()) throw std::runtime_error("family size mismatch");
  for (size_t k = 0; k < family.size(); ++k)
    if (W->parse_word(fam[k].get<std::string>()) != family[k]) throw std::runtime_error("family mismatch");
  G.E = end_from_json(j.at("E"), G, std::nullopt);
  for (const auto& w : j.at("walls")) {
    WallAlgebra Es;
    int s = w.at("s").get<int>();
    Es.algebra = end_from_json(w, G, s);
    Es.embedding = w.at("embedding").get<std::vector<uint32_t>>();
    if (Es.embedding.size() != G.E.algebra->dim()) throw std::runtime_error("embedding size mismatch");
    G.walls.push_back(translation_data(G.E, std::move(Es)));
  }
  if (static_cast<int>(G.walls.size()) != W->rank()) throw std::runtime_error("one wall algebra per simple reflection expected");
  return G;
}

}  // namespace mkd
