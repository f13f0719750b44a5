#include "doctest.h"
#include "mkd/formality.hpp"

using namespace mkd;

namespace {

// Unit plus a -> b with d a = b and all products of a, b zero.
BigradedDgAlgebra acyclic_pair(Bidegree a, uint32_t p = 101) {
  BigradedDgAlgebra R;
  R.p = p;
  R.bideg = {{0, 0}, a, {a.first + 1, a.second}};
  R.unit = 0;
  R.table.assign(9, {});
  for (uint32_t k = 0; k < 3; ++k) {
    R.table[0 * 3 + k] = {{k, 1}};
    R.table[k * 3 + 0] = {{k, 1}};
  }
  R.d = Mat(3, 3);
  R.d(1, 2) = 1;
  return R;
}

// Exterior algebra on x of bidegree (1, 1), zero differential.
BigradedDgAlgebra exterior(uint32_t p = 101) {
  BigradedDgAlgebra R;
  R.p = p;
  R.bideg = {{0, 0}, {1, 1}};
  R.unit = 0;
  R.table.assign(4, {});
  R.table[0] = {{0, 1}};
  R.table[1] = {{1, 1}};
  R.table[2] = {{1, 1}};
  R.d = Mat(2, 2);
  return R;
}

std::map<int, long long> euler_by_column(const BigradedDims& d) {
  std::map<int, long long> e;
  for (const auto& [b, k] : d) e[b.second] += (b.first % 2 ? -1 : 1) * static_cast<long long>(k);
  for (auto it = e.begin(); it != e.end();) it = it->second ? std::next(it) : e.erase(it);
  return e;
}

BigradedComplex sample_complex() {
  BigradedComplex M;
  M.p = 101;
  M.bideg = {{0, 0}, {1, 0}, {2, 1}, {3, 1}, {1, -1}};
  M.d = Mat(5, 5);
  M.d(0, 1) = 3;
  M.d(2, 3) = 5;
  return M;
}

}  // namespace

TEST_SUITE("formality") {
  TEST_CASE("zero differential: cohomology is the algebra itself") {
    auto R = exterior();
    CHECK(R.validate().empty());
    auto H = cohomology(R);
    CHECK(H.algebra.dims() == R.dims());
    CHECK(H.algebra.table == R.table);
    CHECK(diagonal_check(R));
  }

  TEST_CASE("an acyclic pair leaves only the unit") {
    for (Bidegree a : {Bidegree{0, 1}, Bidegree{1, 3}, Bidegree{2, -1}}) {
      auto R = acyclic_pair(a);
      REQUIRE(R.validate().empty());
      auto H = cohomology(R);
      CHECK(H.algebra.dims() == BigradedDims{{{0, 0}, 1}});
      CHECK(diagonal_check(R));
      Vec b(3, 0);
      b[2] = 1;
      CHECK(H.class_of(b) == Vec{0});
      Vec x(3, 0);
      x[1] = 1;
      CHECK_FALSE(H.class_of(x));
    }
  }

  TEST_CASE("invalid algebras are rejected") {
    auto R = acyclic_pair({0, 1});
    R.d(2, 1) = 1;  // d o d != 0 and wrong bidegree
    CHECK_FALSE(R.validate().empty());
    CHECK_THROWS_AS(cohomology(R), std::invalid_argument);
    auto L = acyclic_pair({1, 1});
    L.table[1 * 3 + 1] = {{2, 1}};  // a a = b breaks bidegrees
    CHECK_FALSE(L.validate().empty());
    auto U = exterior();
    U.table[1] = {};  // x 1 = 0
    CHECK_FALSE(U.validate().empty());
  }

  TEST_CASE("random instances: Euler characteristic and diagonal cohomology") {
    for (uint64_t seed = 1; seed <= 40; ++seed) {
      auto R = random_diagonal_instance(seed);
      REQUIRE(R.validate().empty());
      CHECK(R.dim() <= 40);
      auto H = cohomology(R);
      CHECK(euler_by_column(H.algebra.dims()) == euler_by_column(R.dims()));
      CHECK(H.algebra.validate().empty());
      CHECK(diagonal_check(R));
    }
  }

  TEST_CASE("the shear subalgebra and both quasi-isomorphisms") {
    for (uint64_t seed = 100; seed < 130; ++seed) {
      auto R = random_diagonal_instance(seed);
      auto S = shear_subalgebra(R);
      REQUIRE(S.subalgebra);
      CHECK(S.sub.validate().empty());
      for (const auto& b : S.sub.bideg) CHECK(b.second >= b.first);
      auto in = verify_quasi_iso(S.sub, R, S.inclusion);
      CHECK_MESSAGE(in.quasi_iso, in.reason);
      auto out = verify_quasi_iso(S.sub, S.cohomology, S.projection);
      CHECK_MESSAGE(out.quasi_iso, out.reason);
      // The projection is multiplicative.
      const Fp F = R.field();
      for (size_t a = 0; a < S.sub.dim(); ++a)
        for (size_t b = 0; b < S.sub.dim(); ++b) {
          Vec ea(S.sub.dim(), 0), eb(S.sub.dim(), 0);
          ea[a] = eb[b] = 1;
          Vec lhs(S.cohomology.dim(), 0);
          Vec ab = S.sub.multiply(ea, eb);
          for (size_t k = 0; k < ab.size(); ++k)
            if (ab[k]) axpy(F, lhs, ab[k], S.projection.row_vec(k));
          CHECK(lhs == S.cohomology.multiply(S.projection.row_vec(a), S.projection.row_vec(b)));
        }
    }
  }

  TEST_CASE("the non-diagonal instance is reported") {
    auto R = non_diagonal_instance();
    CHECK(R.validate().empty());
    CHECK_FALSE(diagonal_check(R));
    auto H = cohomology(R);
    CHECK(H.algebra.dims() == BigradedDims{{{0, 0}, 1}, {{1, 0}, 1}});
  }

  TEST_CASE("quasi-isomorphism verification") {
    auto R = random_diagonal_instance(7);
    CHECK(verify_quasi_iso(R, R, Mat::identity(R.dim())).quasi_iso);
    auto zero = verify_quasi_iso(R, R, Mat(R.dim(), R.dim()));
    CHECK_FALSE(zero.quasi_iso);
    CHECK_FALSE(zero.reason.empty());
    // Keeping a but dropping b is not a chain map.
    auto P = acyclic_pair({0, 1});
    Mat f = Mat::identity(3);
    f(2, 2) = 0;
    CHECK_THROWS_AS(verify_quasi_iso(P, P, f), std::invalid_argument);
    // Mixing bidegrees.
    Mat g = Mat::identity(3);
    g(1, 0) = 1;
    CHECK_THROWS_AS(verify_quasi_iso(P, P, g), std::invalid_argument);
    CHECK_THROWS_AS(verify_quasi_iso(P, R, Mat(3, R.dim() + 1)), std::invalid_argument);
    // The acyclic pair and the ground field are quasi-isomorphic through the unit.
    BigradedDgAlgebra k;
    k.p = 101;
    k.bideg = {{0, 0}};
    k.table = {{{0, 1}}};
    k.d = Mat(1, 1);
    Mat u(1, 3);
    u(0, 0) = 1;
    CHECK(verify_quasi_iso(k, P, u).quasi_iso);
  }

  TEST_CASE("the regrading shear and its shift law") {
    auto M = sample_complex();
    auto O = omega_shear(M);
    CHECK(O.bideg[2] == Bidegree{1, 1});  // (2, 1) -> (1, 1)
    CHECK(O.bideg[4] == Bidegree{2, -1});
    CHECK(same_complex(omega_inverse(O), M));
    CHECK(same_complex(omega_shear(omega_inverse(M)), M));
    for (int n = -3; n <= 3; ++n) {
      auto lhs = omega_shear(internal_shift(M, n));
      auto rhs = internal_shift(cohomological_shift(omega_shear(M), n), n);
      CHECK(lhs.bideg == rhs.bideg);
      // [n] negates d for odd n; the two agree up to that sign.
      if (n % 2 == 0)
        CHECK(same_complex(lhs, rhs));
      else
        CHECK(lhs.d == scale(Fp(M.p), rhs.d, M.p - 1));
    }
    CHECK(same_complex(cohomological_shift(cohomological_shift(M, 1), -1), M));
    CHECK(internal_degree_from_weight(1) == -2);
    CHECK(internal_degree_from_weight(-1) == 2);
  }
}
