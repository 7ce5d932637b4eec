// Serial reference kernels against the OpenMP versions.
//
//   kernels_bench --benchmark_filter=Multiply

#include <benchmark/benchmark.h>

#include <random>

#include "qfree/dirac.hpp"
#include "qfree/kernels.hpp"

using namespace qfree;

namespace {

Matrix random_matrix(Index rows, Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

Matrix random_unitary(Index n, std::uint64_t seed) {
  Eigen::HouseholderQR<Matrix> qr(random_matrix(n, n, seed));
  return qr.householderQ();
}

void threads_arg(benchmark::internal::Benchmark* b) {
  for (int t : {1, 2, 4, 8}) b->Arg(t);
}

void BM_MultiplyReference(benchmark::State& s) {
  const Matrix a = random_matrix(512, 512, 1), b = random_matrix(512, 512, 2);
  for (auto _ : s) benchmark::DoNotOptimize(kernels::reference::multiply(a, b));
}
BENCHMARK(BM_MultiplyReference)->Unit(benchmark::kMillisecond);

void BM_MultiplyParallel(benchmark::State& s) {
  kernels::set_threads(static_cast<int>(s.range(0)));
  const Matrix a = random_matrix(512, 512, 1), b = random_matrix(512, 512, 2);
  for (auto _ : s) benchmark::DoNotOptimize(kernels::multiply(a, b));
}
BENCHMARK(BM_MultiplyParallel)->Apply(threads_arg)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_MaskedNormReference(benchmark::State& s) {
  const Matrix a = random_matrix(1025, 1025, 3);
  std::vector<char> rows(1025), cols(1025);
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = !(cols[i] = i >= 512);
  for (auto _ : s) benchmark::DoNotOptimize(kernels::reference::sum_abs2_masked(a, rows, cols));
}
BENCHMARK(BM_MaskedNormReference)->Unit(benchmark::kMicrosecond);

void BM_MaskedNormParallel(benchmark::State& s) {
  kernels::set_threads(static_cast<int>(s.range(0)));
  const Matrix a = random_matrix(1025, 1025, 3);
  std::vector<char> rows(1025), cols(1025);
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = !(cols[i] = i >= 512);
  for (auto _ : s) benchmark::DoNotOptimize(kernels::sum_abs2_masked(a, rows, cols));
}
BENCHMARK(BM_MaskedNormParallel)->Apply(threads_arg)->Unit(benchmark::kMicrosecond)->UseRealTime();

void BM_SecondQuantizeReference(benchmark::State& s) {
  const Matrix u = random_unitary(s.range(0), 4);
  for (auto _ : s) benchmark::DoNotOptimize(kernels::reference::fermi_second_quantize(u));
}
BENCHMARK(BM_SecondQuantizeReference)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_SecondQuantizeParallel(benchmark::State& s) {
  kernels::set_threads(static_cast<int>(s.range(1)));
  const Matrix u = random_unitary(s.range(0), 4);
  for (auto _ : s) benchmark::DoNotOptimize(kernels::fermi_second_quantize(u));
}
BENCHMARK(BM_SecondQuantizeParallel)
    ->ArgsProduct({{6, 8, 10}, {1, 4}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

void BM_BuildV(benchmark::State& s) {
  kernels::set_threads(static_cast<int>(s.range(1)));
  const Index w = s.range(0);
  for (auto _ : s) benchmark::DoNotOptimize(dirac::build_v(w, w / 4));
}
BENCHMARK(BM_BuildV)->ArgsProduct({{256, 512}, {1, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
