#include <map>
#include <memory>

#include "doctest.h"
#include "mkd/deodhar.hpp"
#include "oracles.hpp"

using namespace mkd;

using oracle::hecke_r_polynomials;

TEST_SUITE("deodhar") {
  TEST_CASE("polynomial printing and arithmetic") {
    auto q = IntPolynomial::monomial(1, 1);
    auto one = IntPolynomial::constant(1);
    auto p = (q - one) * (q - one) * (q - one) + q * (q - one);
    CHECK(p.str() == "q^3 - 2*q^2 + 2*q - 1");
    CHECK(IntPolynomial().str() == "0");
    CHECK((q - q).is_zero());
    CHECK(p.eval(2) == 3);
  }

  TEST_CASE("R-polynomials match the Hecke algebra inverse") {
    for (auto t : {CartanType::A1, CartanType::A2, CartanType::A3, CartanType::B2, CartanType::G2}) {
      auto W = std::make_shared<WeylGroup>(t);
      RPolynomials R(W);
      for (Element v = 0; v < W->size(); ++v) {
        auto oracle = hecke_r_polynomials(*W, v);
        for (Element u = 0; u < W->size(); ++u) {
          IntPolynomial r = R(u, v);
          CHECK(r == oracle[u]);
          if (W->bruhat_leq(u, v)) {
            CHECK(r.degree() == W->length(v) - W->length(u));
            CHECK(r.leading() == 1);
          } else {
            CHECK(r.is_zero());
          }
        }
      }
    }
  }

  TEST_CASE("small anchors") {
    auto W = std::make_shared<WeylGroup>(CartanType::A1);
    RPolynomials R(W);
    CHECK(R(0, 1).str() == "q - 1");
    CHECK(R(1, 0).is_zero());
    CHECK(R(1, 1).str() == "1");
    CHECK(flag_count(*W, 2, 0, 1) == 1);
    CHECK(flag_count(*W, 3, 0, 1) == 2);
    auto A2 = std::make_shared<WeylGroup>(CartanType::A2);
    RPolynomials R2(A2);
    CHECK(R2(0, A2->parse("sts")).str() == "q^3 - 2*q^2 + 2*q - 1");
  }

  TEST_CASE("flag counts agree with the recursion in A2") {
    auto W = std::make_shared<WeylGroup>(CartanType::A2);
    RPolynomials R(W);
    for (unsigned q : {2u, 3u}) {
      auto T = flag_count_table(*W, q);
      CHECK(T == flag_count_table_serial(*W, q));
      for (Element v = 0; v < W->size(); ++v)
        for (Element u = 0; u < W->size(); ++u) CHECK(static_cast<int64_t>(T[v][u]) == R(u, v).eval(q));
    }
  }

  TEST_CASE("flag counts agree with the recursion in A3 at q = 2") {
    auto W = std::make_shared<WeylGroup>(CartanType::A3);
    auto tab = r_polynomial_table(*W);
    auto T = flag_count_table(*W, 2);
    for (Element v = 0; v < W->size(); ++v)
      for (Element u = 0; u < W->size(); ++u) CHECK(static_cast<int64_t>(T[v][u]) == tab[v][u].eval(2));
    // F_4 is not a prime field; the rank-1 count still follows the polynomial.
    auto A1 = std::make_shared<WeylGroup>(CartanType::A1);
    CHECK(flag_count(*A1, 4, 0, 1) == 3);
    CHECK_THROWS(flag_count(WeylGroup(CartanType::B2), 2, 0, 1));
    CHECK_THROWS(flag_count(*A1, 5, 0, 1));
  }

  TEST_CASE("table builders agree") {
    for (auto t : {CartanType::A3, CartanType::B2, CartanType::G2}) {
      WeylGroup W(t);
      auto a = r_polynomial_table(W);
      auto b = r_polynomial_table_parallel(W);
      CHECK(a == b);
    }
  }

  TEST_CASE("descent choice does not matter") {
    for (auto t : {CartanType::A2, CartanType::A3, CartanType::B2, CartanType::G2}) {
      auto W = std::make_shared<WeylGroup>(t);
      RPolynomials R(W);
      auto first = [](const WeylGroup& G, Element v) { return G.right_descents(v).front(); };
      auto last = [](const WeylGroup& G, Element v) { return G.right_descents(v).back(); };
      for (Element v = 0; v < W->size(); ++v) {
        auto ds = W->right_descents(v);
        for (Element u = 0; u < W->size(); ++u) {
          IntPolynomial ref = R(u, v);
          for (int s : ds) CHECK(R.via_descent(u, v, s) == ref);
          if (ds.size() >= 2) {
            CHECK(r_polynomial_with(*W, u, v, first) == ref);
            CHECK(r_polynomial_with(*W, u, v, last) == ref);
          }
        }
      }
    }
  }

  TEST_CASE("weight envelopes") {
    WeylGroup A1(CartanType::A1);
    auto P = weight_envelope(A1, 0, 1);
    CHECK(P.entries == std::map<int, std::pair<int, int>>{{1, {0, 0}}, {2, {-1, -1}}});
    CHECK(weight_envelope(A1, 1, 1).entries == std::map<int, std::pair<int, int>>{{0, {0, 0}}});
    CHECK(weight_envelope(A1, 1, 0).empty());
    WeylGroup A2(CartanType::A2);
    CHECK(weight_envelope(A2, 0, A2.longest()).entries ==
          std::map<int, std::pair<int, int>>{{3, {-1, 0}}, {4, {-2, -1}}, {5, {-2, -2}}, {6, {-3, -3}}});
    auto E = ext_profile_standard(A1, 0, 1);
    CHECK(E.entries == std::map<int, std::pair<int, int>>{{0, {0, 0}}, {1, {-1, -1}}});
    CHECK(ext_profile_standard(A2, 0, A2.longest()).entries.at(3) == std::pair{-3, -3});
  }

  TEST_CASE("Ext profiles are shifted envelopes") {
    for (auto t : {CartanType::A2, CartanType::B2, CartanType::A3}) {
      WeylGroup W(t);
      for (Element v = 0; v < W.size(); ++v)
        for (Element u = 0; u < W.size(); ++u) {
          auto env = weight_envelope(W, u, v);
          auto ext = ext_profile_standard(W, u, v);
          const int d = W.length(v) - W.length(u);
          CHECK(env.entries.size() == ext.entries.size());
          for (const auto& [n, iv] : ext.entries) {
            CHECK(n >= 0);
            CHECK(n <= d);
            CHECK(env.entries.at(n + d) == iv);
            int lo = -(n + d) / 2;
            CHECK(iv == std::pair{lo, -n});
          }
        }
    }
  }

  TEST_CASE("R-polynomial exponents lie in the negated envelope") {
    for (auto t : {CartanType::A2, CartanType::B2, CartanType::G2, CartanType::A3}) {
      WeylGroup W(t);
      auto tab = r_polynomial_table(W);
      for (Element v = 0; v < W.size(); ++v)
        for (Element u = 0; u < W.size(); ++u) {
          auto env = weight_envelope(W, u, v);
          for (const auto& [m, c] : tab[v][u].coeffs()) {
            bool inside = false;
            for (const auto& [n, iv] : env.entries)
              inside = inside || (-iv.second <= static_cast<int>(m) && static_cast<int>(m) <= -iv.first);
            CHECK(inside);
          }
        }
    }
  }

  TEST_CASE("parabolic profiles") {
    WeylGroup A2(CartanType::A2);
    const Element t = A2.parse("t");
    CHECK(ext_profile_parabolic(A2, 0, 0, 0).entries == std::map<int, std::pair<int, int>>{{0, {0, 0}}});
    CHECK(ext_profile_parabolic(A2, 0, t, 0).entries == ext_profile_standard(A2, 0, t).entries);
    CHECK_THROWS_AS(ext_profile_parabolic(A2, A2.parse("s"), t, 0), std::invalid_argument);
  }

  TEST_CASE("projective weight certificate and the order condition") {
    WeylGroup A2(CartanType::A2);
    auto top = projective_weight_certificate(A2, A2.longest(), 13, 2);
    CHECK(top.flag_intervals.empty());
    CHECK(top.end_window == std::pair{-3, 3});
    CHECK(top.order == 12);
    CHECK(top.hypothesis_holds);
    auto bottom = projective_weight_certificate(A2, 0, 13, 2);
    bool found = false;
    for (const auto& [v, iv] : bottom.flag_intervals)
      if (v == A2.longest()) {
        found = true;
        CHECK(iv == std::pair{1, 3});
      }
    CHECK(found);
    CHECK(bottom.flag_intervals.size() == 5);
    for (uint64_t q = 1; q < 7; ++q) CHECK_FALSE(projective_weight_certificate(A2, 0, 7, q).hypothesis_holds);
    CHECK(multiplicative_order(2, 5) == 4);
    CHECK_THROWS(projective_weight_certificate(A2, 0, 9, 2));
    CHECK_THROWS(projective_weight_certificate(A2, 0, 13, 26));
  }
}
