#include <algorithm>
#include <fstream>
#include <random>

#include "doctest.h"
#include "json.hpp"
#include "mkd/galgebra.hpp"
#include "mkd/soergel.hpp"

using namespace mkd;

namespace {

// k[x]/(x^2) with x in the given degree.
AlgebraPtr dual_numbers(int deg, uint32_t p = 7) {
  std::vector<SparseVec> t(4);
  t[0] = {{0, 1}};
  t[1] = {{1, 1}};
  t[2] = {{1, 1}};
  return std::make_shared<GradedAlgebra>(Fp(p), std::vector<int>{0, deg}, std::vector<uint32_t>{0, 0},
                                         std::vector<uint32_t>{0, 0}, std::vector<uint32_t>{0}, t);
}

AlgebraPtr ground_field(uint32_t p = 7) {
  return std::make_shared<GradedAlgebra>(Fp(p), std::vector<int>{0}, std::vector<uint32_t>{0}, std::vector<uint32_t>{0},
                                         std::vector<uint32_t>{0}, std::vector<SparseVec>{{{0, 1}}});
}

// Path algebra of 1 -> 2 with the arrow in degree 1 (right modules, a = e_1 a e_2).
AlgebraPtr a2_quiver(uint32_t p = 7) {
  // basis: e1, e2, a
  std::vector<SparseVec> t(9);
  t[0 * 3 + 0] = {{0, 1}};
  t[1 * 3 + 1] = {{1, 1}};
  t[0 * 3 + 2] = {{2, 1}};
  t[2 * 3 + 1] = {{2, 1}};
  return std::make_shared<GradedAlgebra>(Fp(p), std::vector<int>{0, 0, 1}, std::vector<uint32_t>{0, 1, 0},
                                         std::vector<uint32_t>{0, 1, 1}, std::vector<uint32_t>{0, 1}, t);
}

// The same module in a random homogeneous basis.
GradedModule rebase(const GradedModule& M, std::mt19937_64& rng) {
  const Fp& F = M.A->field();
  const size_t n = M.dim();
  Mat P;
  do {
    P = Mat(n, n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        if (M.degree[i] == M.degree[j] && M.block[i] == M.block[j]) P(i, j) = rng() % F.p();
  } while (!inverse(F, P));
  Mat Pi = *inverse(F, P);
  // permute too
  std::vector<size_t> perm(n);
  for (size_t i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  Mat Q(n, n);
  for (size_t i = 0; i < n; ++i) Q(i, perm[i]) = 1;
  Mat T = mul(F, Q, P), Ti = mul(F, Pi, transpose(Q));
  GradedModule N;
  N.A = M.A;
  N.degree.resize(n);
  N.block.resize(n);
  for (size_t i = 0; i < n; ++i) {
    N.degree[i] = M.degree[perm[i]];
    N.block[i] = M.block[perm[i]];
  }
  for (const Mat& a : M.action) N.action.push_back(mul(F, T, mul(F, a, Ti)));
  return N;
}

std::vector<GradedDims> summand_dims(const std::vector<Summand>& S) {
  std::vector<GradedDims> d;
  for (const auto& s : S) d.push_back(s.module.graded_dims());
  std::sort(d.begin(), d.end());
  return d;
}

GradedDims sum_dims(const std::vector<Summand>& S) {
  GradedDims d;
  for (const auto& s : S)
    for (auto [k, v] : s.module.graded_dims()) d[k] += v;
  return d;
}

}  // namespace

TEST_SUITE("galgebra") {
  TEST_CASE("dims print as Laurent polynomials") {
    CHECK(dims_to_string({{-1, 2}, {0, 1}, {2, 3}}) == "2q^-1 + 1 + 3q^2");
    CHECK(dims_to_string({}) == "0");
  }

  TEST_CASE("modules, shifts and the forgetful functor") {
    auto A = dual_numbers(1);
    GradedModule R = regular(A);
    CHECK(R.check());
    CHECK(R.graded_dims() == GradedDims{{0, 1}, {1, 1}});
    GradedModule R3 = shift(R, 3);
    CHECK(R3.graded_dims() == GradedDims{{3, 1}, {4, 1}});
    CHECK(v_forget(R3).graded_dims() == v_forget(R).graded_dims());
    CHECK(v_forget(R3).action == v_forget(R).action);
    std::mt19937_64 rng(4);
    for (int t = 0; t < 5; ++t) {
      GradedModule M = rebase(direct_sum(R, shift(R, t)), rng);
      CHECK(M.check());
      CHECK(v_forget(M).dim() == M.dim());
    }
  }

  TEST_CASE("Hom, kernels and cokernels over the dual numbers") {
    auto A = dual_numbers(1);
    GradedModule R = regular(A);
    CHECK(hom_dims(R, R) == GradedDims{{0, 1}, {1, 1}});
    auto maps = hom(R, R, 1);
    REQUIRE(maps.size() == 1);
    CHECK(is_module_map(R, R, maps[0]));
    auto K = kernel(R, R, maps[0]);
    CHECK(K.module.graded_dims() == GradedDims{{1, 1}});
    auto Q = cokernel(R, shift(R, -1), maps[0]);
    CHECK(Q.module.graded_dims() == GradedDims{{-1, 1}});
    auto rad = radical(R);
    CHECK(rad.module.graded_dims() == GradedDims{{1, 1}});
  }

  TEST_CASE("ground field and dual numbers: Koszul verdicts") {
    auto k = koszulity_check(ground_field());
    CHECK(k.linear);
    CHECK(k.finite);
    REQUIRE(k.ext.size() == 1);
    CHECK(k.ext[0] == std::map<int, size_t>{{0, 1}});

    auto lin = koszulity_check(dual_numbers(1), 10);
    CHECK(lin.nonneg_graded);
    CHECK(lin.semisimple_deg0);
    CHECK(lin.linear);
    CHECK_FALSE(lin.finite);
    CHECK(lin.linear_up_to >= 10);
    REQUIRE(lin.ext.size() >= 11);
    for (int i = 0; i <= 10; ++i) CHECK(lin.ext[i] == std::map<int, size_t>{{-i, 1}});

    auto bad = koszulity_check(dual_numbers(2), 10);
    CHECK_FALSE(bad.linear);
    CHECK(bad.verdict.rfind("not Koszul", 0) == 0);
    REQUIRE(bad.ext.size() >= 2);
    CHECK(bad.ext[1] == std::map<int, size_t>{{-2, 1}});

    auto neg = koszulity_check(dual_numbers(-1), 4);
    CHECK_FALSE(neg.nonneg_graded);
    CHECK(neg.verdict.rfind("not Koszul-gradable", 0) == 0);
  }

  TEST_CASE("a non-semisimple degree zero part is reported, not thrown") {
    auto A = dual_numbers(0);
    auto r = koszulity_check(A, 3);
    CHECK(r.nonneg_graded);
    CHECK_FALSE(r.semisimple_deg0);
    CHECK(r.verdict.rfind("not Koszul-gradable", 0) == 0);
  }

  TEST_CASE("quiver algebra and its opposite") {
    auto A = a2_quiver();
    CHECK(A->check_associative());
    auto r = koszulity_check(A, 6);
    CHECK(r.linear);
    CHECK(r.finite);
    auto o = koszulity_check(std::make_shared<GradedAlgebra>(A->opposite()), 6);
    CHECK(o.linear == r.linear);
    CHECK(o.ext == r.ext);
    CHECK(r.ext.size() == 2);
    CHECK(r.ext[1] == std::map<int, size_t>{{-1, 1}});
  }

  TEST_CASE("Koszul modules") {
    auto A = dual_numbers(1);
    GradedModule R = regular(A);
    auto free = koszul_module_check(R, 6);
    CHECK(free.linear);
    CHECK(free.finite);
    CHECK(free.generators.size() == 1);
    auto top = quotient(R, {radical(R).inclusion.row_vec(0)}).module;
    auto simple = koszul_module_check(top, 6);
    CHECK(simple.linear);
    CHECK_FALSE(simple.finite);
    auto sh = koszul_module_check(shift(top, 5), 6);
    CHECK(sh.linear);
    CHECK(sh.generator_degree == 5);
    // Generators in two degrees cannot have a linear resolution.
    auto mixed = koszul_module_check(direct_sum(top, shift(top, 1)), 4);
    CHECK_FALSE(mixed.linear);
    CHECK_FALSE(mixed.single_generator_degree);
  }

  TEST_CASE("Krull-Schmidt on small modules") {
    auto A = dual_numbers(1);
    GradedModule R = regular(A);
    auto one = decompose_module(R);
    CHECK(one.size() == 1);
    CHECK(endomorphisms_local(R));
    GradedModule M = direct_sum(R, shift(R, 1));
    auto two = decompose_module(M);
    REQUIRE(two.size() == 2);
    auto sh = isomorphic_up_to_shift(two[0].module, two[1].module);
    REQUIRE(sh);
    CHECK(std::abs(*sh) == 1);
    CHECK_FALSE(endomorphisms_local(M));
    auto top = quotient(R, {radical(R).inclusion.row_vec(0)}).module;
    CHECK(decompose_module(top).size() == 1);
  }

  TEST_CASE("decompositions are basis independent and certified") {
    auto W = std::make_shared<WeylGroup>(CartanType::A2);
    auto C = std::make_shared<CoinvariantAlgebra>(W, 5);
    auto E = endomorphism_algebra(C, W->family());
    const Fp& F = E.algebra->field();
    std::mt19937_64 rng(12);
    for (Element x : {W->parse("s"), W->longest()}) {
      GradedModule P = projective(E.algebra, x);
      GradedModule M = direct_sum(P, shift(projective(E.algebra, 0), 2));
      auto S = decompose_module(M, 3);
      CHECK(sum_dims(S) == M.graded_dims());
      for (const auto& s : S) {
        CHECK(endomorphisms_local(s.module));
        CHECK(mul(F, s.inclusion, s.projection) == Mat::identity(s.module.dim()));
        CHECK(is_module_map(s.module, M, s.inclusion));
        CHECK(is_module_map(M, s.module, s.projection));
      }
      GradedModule N = rebase(M, rng);
      auto S2 = decompose_module(N, 9);
      CHECK(summand_dims(S2) == summand_dims(S));
      for (const auto& a : S) {
        size_t matches = 0, same = 0;
        for (const auto& b : S2) matches += isomorphic(a.module, b.module) ? 1 : 0;
        for (const auto& b : S) same += isomorphic(a.module, b.module) ? 1 : 0;
        CHECK(matches == same);
      }
    }
  }

  TEST_CASE("the top projective of A2 has exactly one new summand") {
    std::ifstream in(std::string(MKD_FIXTURE_DIR) + "/a2_endalg.json");
    REQUIRE(in);
    auto j = nlohmann::json::parse(in);
    auto W = std::make_shared<WeylGroup>(CartanType::A2);
    auto C = std::make_shared<CoinvariantAlgebra>(W, 5);
    auto E = endomorphism_algebra(C, W->family());
    auto top = decompose_module(projective(E.algebra, W->longest()));
    std::vector<GradedDims> expect;
    for (const auto& d : j["top_projective_summands"]) {
      GradedDims g;
      for (auto it = d.begin(); it != d.end(); ++it) g[std::stoi(it.key())] = it.value().get<size_t>();
      expect.push_back(g);
    }
    std::sort(expect.begin(), expect.end());
    CHECK(summand_dims(top) == expect);
    size_t fresh = 0;
    for (const auto& s : top) {
      bool old = false;
      for (Element g = 0; g < W->size(); ++g) {
        if (W->length(g) >= W->length(W->longest())) continue;
        for (const auto& t : decompose_module(projective(E.algebra, g)))
          old = old || isomorphic_up_to_shift(s.module, t.module).has_value();
      }
      fresh += old ? 0 : 1;
    }
    CHECK(fresh == 1);
  }

  TEST_CASE("primitive idempotents and semisimplicity of degree zero") {
    auto A = a2_quiver();
    auto ss = degree_zero_semisimple(A);
    CHECK(ss.semisimple);
    CHECK(ss.idempotents.size() == 2);
    auto W = std::make_shared<WeylGroup>(CartanType::A1);
    auto C = std::make_shared<CoinvariantAlgebra>(W, 5);
    auto E = endomorphism_algebra(C, W->family());
    auto prim = primitive_idempotents(E.algebra);
    CHECK(prim.size() == 2);
    // E_0 for A1 contains the degree-0 maps between D_e and D_s.
    CHECK_FALSE(degree_zero_semisimple(E.algebra).semisimple);
  }

  TEST_CASE("extension and restriction of scalars") {
    auto W = std::make_shared<WeylGroup>(CartanType::A2);
    auto C = std::make_shared<CoinvariantAlgebra>(W, 5);
    auto E = endomorphism_algebra(C, W->family());
    const Fp& F = E.algebra->field();
    for (int s = 0; s < 2; ++s) {
      auto Es = wall_algebra(E, s);
      const AlgebraPtr& B = Es.algebra.algebra;
      for (Element x = 0; x < W->size(); ++x) {
        // e_x E (x)_E E^s = e_x E^s.
        GradedModule P = projective(E.algebra, x);
        InducedModule I = induce(P, B, Es.embedding);
        CHECK(I.module.check());
        CHECK(I.module.graded_dims() == projective(B, x).graded_dims());
        GradedModule back = restrict_module(I.module, E.algebra, Es.embedding);
        CHECK(back.check());
        CHECK(back.dim() == I.module.dim());
        CHECK(is_module_map(P, back, I.unit));
        CHECK(rank(F, I.unit) == P.dim());
      }
    }
  }

  TEST_CASE("total-degree collapse of complexes") {
    auto A = dual_numbers(1);
    GradedModule R = regular(A);
    ComplexOfModules single{0, {R}, {}};
    DgModule D = v_bar_shear(single);
    CHECK(D.check());
    CHECK(D.dims() == R.graded_dims());

    // R<1> --x--> R in cohomological degrees 0, 1.
    auto x = hom(shift(R, 1), R, 0);
    REQUIRE(x.size() == 1);
    ComplexOfModules two{0, {shift(R, 1), R}, {x[0]}};
    DgModule T = v_bar_shear(two);
    CHECK(T.check());
    // Internal degrees {1, 2} at i = 0 and {0, 1} at i = 1: antidiagonals.
    CHECK(T.dims() == GradedDims{{1, 2}, {2, 2}});
    CHECK_FALSE(T.d.is_zero());

    for (int n : {1, 2, -3}) {
      DgModule lhs = v_bar_shear(shift_internal(two, n));
      DgModule rhs = shift_cohomological(T, -n);
      CHECK(lhs.module.degree == rhs.module.degree);
      CHECK(lhs.module.action == rhs.module.action);
      // Equal up to the automorphism m -> (-1)^{deg m} m, which flips d.
      if (n % 2 == 0)
        CHECK(lhs.d == rhs.d);
      else
        CHECK(lhs.d == scale(A->field(), rhs.d, A->field().neg(1)));
      CHECK(rhs.check());
    }
  }

  TEST_CASE("corner algebras") {
    auto A = a2_quiver();
    auto ss = degree_zero_semisimple(A);
    auto K = corner_algebra(A, ss.idempotents, {0, 0});
    CHECK(K.algebra->dim() == 3);
    CHECK(K.algebra->check_associative());
    auto K2 = corner_algebra(A, ss.idempotents, {0, 1});
    CHECK(K2.algebra->graded_dims() != K.algebra->graded_dims());
  }
}
