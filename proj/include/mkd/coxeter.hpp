#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mkd {

enum class CartanType { A1, A2, A3, B2, G2 };

CartanType parse_cartan_type(std::string_view s);
std::string to_string(CartanType t);

// Word over simple reflections, letters are generator indices 0..rank-1.
using Word = std::vector<int>;
// Elements are indices into the enumeration; index 0 is the identity and the
// enumeration is sorted by (length, shortlex normal form).
using Element = uint32_t;

class WeylGroup {
 public:
  explicit WeylGroup(CartanType type);

  CartanType type() const { return type_; }
  int rank() const { return rank_; }
  size_t size() const { return nf_.size(); }
  int num_roots() const { return num_roots_; }
  int coxeter_number() const { return coxeter_number_; }
  // a_{ij} with s_i(alpha_j) = alpha_j - a_{ij} alpha_i.
  const std::vector<std::vector<int>>& cartan() const { return cartan_; }

  Element identity() const { return 0; }
  Element longest() const { return longest_; }
  int length(Element w) const { return static_cast<int>(nf_[w].size()); }
  const Word& normal_form(Element w) const { return nf_[w]; }

  Element mul_right(Element w, int s) const { return right_[w * rank_ + s]; }
  Element mul_left(int s, Element w) const { return left_[w * rank_ + s]; }
  Element multiply(Element u, Element v) const;
  Element inverse(Element w) const { return inv_[w]; }
  Element from_word(const Word& w) const;

  bool is_right_descent(Element w, int s) const { return length(mul_right(w, s)) < length(w); }
  std::vector<int> right_descents(Element w) const;

  // Bruhat order by the subword property.
  bool bruhat_leq(Element u, Element v) const { return (below_[v] >> u) & 1u; }
  uint64_t bruhat_below_mask(Element v) const { return below_[v]; }

  // W^s = {w : ws > w}.
  std::vector<Element> coset_reps(int s) const;
  std::vector<Word> reduced_expressions(Element w) const;

  char letter(int s) const { return "stu"[s]; }
  std::string to_string(Element w) const;
  std::string word_to_string(const Word& w) const;
  Word parse_word(std::string_view s) const;
  Element parse(std::string_view s) const { return from_word(parse_word(s)); }

  // The distinguished family: f_x is the normal form of x^{-1}, indexed by x.
  std::vector<Word> family() const;

  // Signed integer matrix of w acting on fundamental weight coordinates.
  const std::vector<int>& matrix(Element w) const { return mats_[w]; }

 private:
  CartanType type_;
  int rank_;
  int num_roots_;
  int coxeter_number_;
  Element longest_ = 0;
  std::vector<std::vector<int>> cartan_;
  std::vector<Word> nf_;
  std::vector<std::vector<int>> mats_;
  std::vector<Element> right_, left_, inv_;
  std::vector<uint64_t> below_;
};

}  // namespace mkd
