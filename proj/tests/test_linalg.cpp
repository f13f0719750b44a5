#include <random>

#include "doctest.h"
#include "mkd/linalg.hpp"

using namespace mkd;

namespace {

Mat random_mat(std::mt19937_64& rng, size_t r, size_t c, uint32_t p, double density = 1.0) {
  Mat A(r, c);
  std::uniform_int_distribution<uint32_t> val(0, p - 1);
  std::bernoulli_distribution keep(density);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < c; ++j)
      if (keep(rng)) A(i, j) = val(rng);
  return A;
}

// Rank by brute force over F_2: count vectors in the row span.
size_t rank_f2_bruteforce(const Mat& A) {
  std::vector<uint64_t> rows;
  for (size_t i = 0; i < A.rows(); ++i) {
    uint64_t m = 0;
    for (size_t j = 0; j < A.cols(); ++j)
      if (A(i, j)) m |= uint64_t{1} << j;
    rows.push_back(m);
  }
  std::vector<bool> seen(uint64_t{1} << A.cols(), false);
  size_t count = 0;
  for (uint64_t mask = 0; mask < (uint64_t{1} << rows.size()); ++mask) {
    uint64_t v = 0;
    for (size_t i = 0; i < rows.size(); ++i)
      if ((mask >> i) & 1) v ^= rows[i];
    if (!seen[v]) {
      seen[v] = true;
      ++count;
    }
  }
  size_t r = 0;
  while ((size_t{1} << r) < count) ++r;
  return r;
}

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("field arithmetic") {
    Fp F(101);
    for (uint32_t a = 1; a < 101; ++a) CHECK(F.mul(a, F.inv(a)) == 1);
    CHECK(F.from(-1) == 100);
    CHECK(F.centered(100) == -1);
    CHECK(F.pow(3, 100) == 1);
    CHECK(is_prime(101));
    CHECK_FALSE(is_prime(91));
    CHECK_THROWS(Fp(8));
  }

  TEST_CASE("rank over F_2 agrees with span enumeration") {
    std::mt19937_64 rng(7);
    Fp F(2);
    for (int t = 0; t < 40; ++t) {
      Mat A = random_mat(rng, 1 + rng() % 7, 1 + rng() % 9, 2, 0.4);
      CHECK(rank(F, A) == rank_f2_bruteforce(A));
    }
  }

  TEST_CASE("nullspace, solve and inverse") {
    std::mt19937_64 rng(11);
    Fp F(13);
    for (int t = 0; t < 30; ++t) {
      size_t r = 1 + rng() % 6, c = 1 + rng() % 8;
      Mat A = random_mat(rng, r, c, 13, 0.6);
      Mat N = nullspace(F, A);
      CHECK(N.rows() + rank(F, A) == c);
      for (size_t i = 0; i < N.rows(); ++i) CHECK(is_zero(mul(F, A, N.row_vec(i))));
      Vec x(c);
      for (auto& v : x) v = rng() % 13;
      Vec b = mul(F, A, x);
      auto y = solve(F, A, b);
      REQUIRE(y);
      CHECK(mul(F, A, *y) == b);
    }
    Mat B(2, 2);
    B(0, 0) = 1, B(0, 1) = 2, B(1, 0) = 3, B(1, 1) = 4;
    auto Bi = inverse(F, B);
    REQUIRE(Bi);
    CHECK(mul(F, B, *Bi) == Mat::identity(2));
    Mat S(2, 2);
    S(0, 0) = 1, S(0, 1) = 2, S(1, 0) = 2, S(1, 1) = 4;
    CHECK_FALSE(inverse(F, S));
  }

  TEST_CASE("parallel elimination matches the serial one") {
    std::mt19937_64 rng(3);
    Fp F(10007);
    for (int t = 0; t < 10; ++t) {
      Mat A = random_mat(rng, 20 + rng() % 40, 20 + rng() % 40, 10007, 0.3);
      Mat B = A;
      auto p1 = rref(F, A);
      auto p2 = rref_parallel(F, B);
      CHECK(p1 == p2);
      CHECK(A == B);
    }
  }

  TEST_CASE("row space coordinates and free columns") {
    Fp F(7);
    RowSpace S(F, 4, true);
    CHECK(S.insert({1, 2, 0, 0}));
    CHECK(S.insert({0, 0, 1, 3}));
    CHECK_FALSE(S.insert({2, 4, 3, 2}));
    auto c = S.coords({3, 6, 5, 1});
    REQUIRE(c);
    CHECK(*c == Vec{3, 5});
    CHECK(S.free_columns() == std::vector<size_t>{1, 3});
    CHECK_FALSE(S.contains({0, 1, 0, 0}));
  }

  TEST_CASE("polynomials and the characteristic polynomial") {
    Fp F(5);
    Poly a = {1, 1}, b = {4, 1};  // x+1, x-1
    Poly ab = poly_mul(F, a, b);
    CHECK(ab == Poly{4, 0, 1});
    CHECK(poly_gcd(F, ab, a) == a);
    CHECK(poly_mod(F, ab, a).empty());
    Mat A(2, 2);
    A(0, 1) = 1, A(1, 0) = 1;
    CHECK(charpoly(F, A) == ab);
    CHECK(poly_eval(F, charpoly(F, A), A).is_zero());
  }
}
