// OpenMP kernels against their serial references at Dicke dimensions used by
// the protocols (N = 100 ... 1600).

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "squeeze/diagnostics.hpp"
#include "squeeze/kernels.hpp"
#include "squeeze/spin.hpp"

namespace {

using squeeze::Complex;
namespace k = squeeze::kernels;

std::vector<Complex> random_vector(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Complex> v(n);
  for (auto& c : v) c = {g(rng), g(rng)};
  return v;
}

std::vector<double> random_matrix(std::size_t n) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> m(n * n);
  for (auto& x : m) x = u(rng);
  return m;
}

template <bool Parallel>
void BM_RealMatvec(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = random_matrix(n);
  const auto in = random_vector(n, 1);
  std::vector<Complex> out(n);
  for (auto _ : state) {
    if constexpr (Parallel)
      k::real_matvec(m, n, in, out);
    else
      k::serial::real_matvec(m, n, in, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n * n));
}

template <bool Parallel>
void BM_BandedMatvec(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> d0(n, 1.0);
  const auto d1 = random_vector(n - 1, 2);
  const auto d2 = random_vector(n - 2, 3);
  const auto in = random_vector(n, 4);
  std::vector<Complex> out(n);
  for (auto _ : state) {
    if constexpr (Parallel)
      k::banded_hermitian_matvec(d0, d1, d2, in, out);
    else
      k::serial::banded_hermitian_matvec(d0, d1, d2, in, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void BM_Phases(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto v = random_vector(n, 5);
  const double m0 = 0.5 * static_cast<double>(n - 1);
  for (auto _ : state) {
    if constexpr (Parallel)
      k::apply_phases(v, m0, 1e-3, 1e-5);
    else
      k::serial::apply_phases(v, m0, 1e-3, 1e-5);
    benchmark::DoNotOptimize(v.data());
  }
}

template <bool Parallel>
void BM_Husimi(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto css = squeeze::make_css(squeeze::SpinLength::from_particles(n), 1.0, 0.3);
  for (auto _ : state) {
    auto g = Parallel ? squeeze::husimi_q(css, 64, 128) : squeeze::serial::husimi_q(css, 64, 128);
    benchmark::DoNotOptimize(g.q.data());
  }
}

}  // namespace

BENCHMARK(BM_RealMatvec<true>)->Arg(101)->Arg(401)->Arg(1251)->Arg(1601);
BENCHMARK(BM_RealMatvec<false>)->Arg(101)->Arg(401)->Arg(1251)->Arg(1601);
BENCHMARK(BM_BandedMatvec<true>)->Arg(1251)->Arg(1601);
BENCHMARK(BM_BandedMatvec<false>)->Arg(1251)->Arg(1601);
BENCHMARK(BM_Phases<true>)->Arg(1251);
BENCHMARK(BM_Phases<false>)->Arg(1251);
BENCHMARK(BM_Husimi<true>)->Arg(100)->Arg(1250);
BENCHMARK(BM_Husimi<false>)->Arg(100)->Arg(1250);

BENCHMARK_MAIN();
