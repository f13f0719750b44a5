#include "mkd/coxeter.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace mkd {

CartanType parse_cartan_type(std::string_view s) {
  if (s == "A1") return CartanType::A1;
  if (s == "A2") return CartanType::A2;
  if (s == "A3") return CartanType::A3;
  if (s == "B2") return CartanType::B2;
  if (s == "G2") return CartanType::G2;
  throw std::invalid_argument("unsupported Cartan type '" + std::string(s) + "' (expected A1, A2, A3, B2 or G2)");
}

std::string to_string(CartanType t) {
  switch (t) {
    case CartanType::A1: return "A1";
    case CartanType::A2: return "A2";
    case CartanType::A3: return "A3";
    case CartanType::B2: return "B2";
    case CartanType::G2: return "G2";
  }
  return "?";
}

namespace {

std::vector<std::vector<int>> cartan_matrix(CartanType t) {
  switch (t) {
    case CartanType::A1: return {{2}};
    case CartanType::A2: return {{2, -1}, {-1, 2}};
    case CartanType::A3: return {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
    case CartanType::B2: return {{2, -2}, {-1, 2}};
    case CartanType::G2: return {{2, -3}, {-1, 2}};
  }
  throw std::invalid_argument("unknown type");
}

}  // namespace

WeylGroup::WeylGroup(CartanType type) : type_(type), cartan_(cartan_matrix(type)) {
  rank_ = static_cast<int>(cartan_.size());
  const int n = rank_;
  // s_i on weight coordinates: lambda -> lambda - lambda_i * alpha_i, where
  // alpha_i = sum_j a_{ji} omega_j.
  std::vector<std::vector<int>> gens(n, std::vector<int>(n * n, 0));
  for (int i = 0; i < n; ++i) {
    auto& S = gens[i];
    for (int r = 0; r < n; ++r) S[r * n + r] = 1;
    for (int r = 0; r < n; ++r) S[r * n + i] -= cartan_[r][i];
  }
  auto matmul = [n](const std::vector<int>& A, const std::vector<int>& B) {
    std::vector<int> C(n * n, 0);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        if (A[i * n + k])
          for (int j = 0; j < n; ++j) C[i * n + j] += A[i * n + k] * B[k * n + j];
    return C;
  };
  auto orbit_key = [n](const std::vector<int>& M) {
    std::vector<int> v(n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) v[i] += M[i * n + j];
    return v;
  };

  // Breadth-first search with generators tried in ascending order yields the
  // shortlex normal form at first discovery.
  std::map<std::vector<int>, Element> index;
  std::vector<int> id(n * n, 0);
  for (int i = 0; i < n; ++i) id[i * n + i] = 1;
  mats_.push_back(id);
  nf_.push_back({});
  index[orbit_key(id)] = 0;
  for (size_t head = 0; head < mats_.size(); ++head) {
    for (int s = 0; s < n; ++s) {
      auto M = matmul(mats_[head], gens[s]);
      auto key = orbit_key(M);
      if (index.count(key)) continue;
      index[key] = static_cast<Element>(mats_.size());
      Word w = nf_[head];
      w.push_back(s);
      nf_.push_back(std::move(w));
      mats_.push_back(std::move(M));
    }
  }
  const size_t N = mats_.size();
  right_.assign(N * n, 0);
  left_.assign(N * n, 0);
  inv_.assign(N, 0);
  for (size_t w = 0; w < N; ++w)
    for (int s = 0; s < n; ++s) {
      right_[w * n + s] = index.at(orbit_key(matmul(mats_[w], gens[s])));
      left_[w * n + s] = index.at(orbit_key(matmul(gens[s], mats_[w])));
    }
  for (size_t w = 0; w < N; ++w) {
    Element x = 0;
    for (auto it = nf_[w].rbegin(); it != nf_[w].rend(); ++it) x = mul_right(x, *it);
    inv_[w] = x;
  }
  for (size_t w = 0; w < N; ++w)
    if (nf_[w].size() > nf_[longest_].size()) longest_ = static_cast<Element>(w);
  num_roots_ = 2 * static_cast<int>(nf_[longest_].size());
  coxeter_number_ = num_roots_ / n;

  if (N > 64) throw std::logic_error("WeylGroup: Bruhat masks limited to 64 elements");
  below_.assign(N, 0);
  below_[0] = 1;
  for (size_t v = 1; v < N; ++v) {
    const Word& w = nf_[v];
    Element prefix = 0;
    for (size_t k = 0; k + 1 < w.size(); ++k) prefix = mul_right(prefix, w[k]);
    int s = w.back();
    uint64_t m = below_[prefix];
    uint64_t out = m;
    for (size_t x = 0; x < N; ++x)
      if ((m >> x) & 1u) out |= uint64_t{1} << mul_right(static_cast<Element>(x), s);
    below_[v] = out;
  }
}

Element WeylGroup::multiply(Element u, Element v) const {
  Element x = u;
  for (int s : nf_[v]) x = mul_right(x, s);
  return x;
}

Element WeylGroup::from_word(const Word& w) const {
  Element x = 0;
  for (int s : w) {
    if (s < 0 || s >= rank_) throw std::invalid_argument("word letter out of range");
    x = mul_right(x, s);
  }
  return x;
}

std::vector<int> WeylGroup::right_descents(Element w) const {
  std::vector<int> out;
  for (int s = 0; s < rank_; ++s)
    if (is_right_descent(w, s)) out.push_back(s);
  return out;
}

std::vector<Element> WeylGroup::coset_reps(int s) const {
  if (s < 0 || s >= rank_) throw std::invalid_argument("simple reflection out of range");
  std::vector<Element> out;
  for (Element w = 0; w < size(); ++w)
    if (!is_right_descent(w, s)) out.push_back(w);
  return out;
}

std::vector<Word> WeylGroup::reduced_expressions(Element w) const {
  if (w == 0) return {Word{}};
  std::vector<Word> out;
  for (int s : right_descents(w))
    for (Word x : reduced_expressions(mul_right(w, s))) {
      x.push_back(s);
      out.push_back(std::move(x));
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::string WeylGroup::word_to_string(const Word& w) const {
  if (w.empty()) return "e";
  std::string s;
  for (int x : w) s.push_back(letter(x));
  return s;
}

std::string WeylGroup::to_string(Element w) const { return word_to_string(nf_[w]); }

Word WeylGroup::parse_word(std::string_view s) const {
  Word w;
  if (s == "e" || s.empty()) return w;
  for (char c : s) {
    int k = c == 's' ? 0 : c == 't' ? 1 : c == 'u' ? 2 : -1;
    if (k < 0 || k >= rank_)
      throw std::invalid_argument("malformed word '" + std::string(s) + "' for type " + mkd::to_string(type_));
    w.push_back(k);
  }
  return w;
}

std::vector<Word> WeylGroup::family() const {
  std::vector<Word> F;
  F.reserve(size());
  for (Element x = 0; x < size(); ++x) F.push_back(nf_[inverse(x)]);
  return F;
}

}  // namespace mkd
