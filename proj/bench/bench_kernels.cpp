// Serial vs OpenMP kernels. Run with OMP_NUM_THREADS to compare.
#include <benchmark/benchmark.h>

#include <random>

#include "mkd/deodhar.hpp"
#include "mkd/linalg.hpp"

using namespace mkd;

namespace {

Mat random_matrix(size_t n, uint32_t p, uint64_t seed) {
  std::mt19937_64 rng(seed);
  Mat A(n, n);
  for (auto& v : A.data()) v = static_cast<uint32_t>(rng() % p);
  return A;
}

void BM_rref(benchmark::State& st) {
  const Fp F(32003);
  const Mat A = random_matrix(static_cast<size_t>(st.range(0)), F.p(), 7);
  for (auto _ : st) {
    Mat B = A;
    benchmark::DoNotOptimize(rref(F, B));
  }
}

void BM_rref_parallel(benchmark::State& st) {
  const Fp F(32003);
  const Mat A = random_matrix(static_cast<size_t>(st.range(0)), F.p(), 7);
  for (auto _ : st) {
    Mat B = A;
    benchmark::DoNotOptimize(rref_parallel(F, B));
  }
}

void BM_rpoly_table(benchmark::State& st) {
  WeylGroup W(CartanType::A3);
  for (auto _ : st) benchmark::DoNotOptimize(r_polynomial_table(W));
}

void BM_rpoly_table_parallel(benchmark::State& st) {
  WeylGroup W(CartanType::A3);
  for (auto _ : st) benchmark::DoNotOptimize(r_polynomial_table_parallel(W));
}

void BM_flag_counts_serial(benchmark::State& st) {
  WeylGroup W(CartanType::A3);
  const auto q = static_cast<unsigned>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(flag_count_table_serial(W, q));
}

void BM_flag_counts(benchmark::State& st) {
  WeylGroup W(CartanType::A3);
  const auto q = static_cast<unsigned>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(flag_count_table(W, q));
}

}  // namespace

BENCHMARK(BM_rref)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rref_parallel)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rpoly_table)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rpoly_table_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_flag_counts_serial)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_flag_counts)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
