#include <benchmark/benchmark.h>

#include "eqloc/fraction.hpp"
#include "eqloc/grass.hpp"
#include "eqloc/modular.hpp"
#include "eqloc/omega1.hpp"
#include "eqloc/poly_text.hpp"
#include "eqloc/symfunc.hpp"

using namespace eqloc;

namespace {

std::vector<FractionTerm> projective_terms(std::size_t n, unsigned power) {
  std::vector<FractionTerm> terms;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<LinearForm> den;
    for (std::size_t l = 0; l < n; ++l)
      if (l != k) den.push_back(LinearForm::difference(n, l, k));
    terms.emplace_back(MultiPoly::variable(n, k).pow(power), den);
  }
  return terms;
}

void BM_SumFractions(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto terms = projective_terms(n, static_cast<unsigned>(n + 3));
  for (auto _ : state) benchmark::DoNotOptimize(sum_fractions(terms));
}
BENCHMARK(BM_SumFractions)->DenseRange(3, 7, 2);

void BM_GrassVolume(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const std::size_t n = 2 * m + 1;
  MultiPoly c1(m);
  for (std::size_t i = 0; i < m; ++i) c1 -= MultiPoly::variable(m, i);
  const MultiPoly W = c1.pow(static_cast<unsigned>(m * (n - m)));
  for (auto _ : state) benchmark::DoNotOptimize(integrate_symmetric(W, m, n));
}
BENCHMARK(BM_GrassVolume)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_ExpandTwoAlphabets(benchmark::State& state) {
  const MultiPoly f3 = omega1_local(3, Omega1Method::direct).f;
  for (auto _ : state) benchmark::DoNotOptimize(omega1_schur_table(f3, 3));
}
BENCHMARK(BM_ExpandTwoAlphabets)->Unit(benchmark::kMillisecond);

void BM_Omega1(benchmark::State& state) {
  const auto method = static_cast<Omega1Method>(state.range(0));
  state.SetLabel(std::string(to_string(method)));
  for (auto _ : state) benchmark::DoNotOptimize(omega1_local(3, method));
}
BENCHMARK(BM_Omega1)
    ->Arg(static_cast<int>(Omega1Method::direct))
    ->Arg(static_cast<int>(Omega1Method::grouped))
    ->Arg(static_cast<int>(Omega1Method::gkm))
    ->Arg(static_cast<int>(Omega1Method::modular))
    ->Unit(benchmark::kMillisecond);

void BM_ModularMul(benchmark::State& state) {
  const ModField F(modular_primes()[0]);
  std::uint64_t a = F.from_uint(123456789), b = F.from_uint(987654321);
  for (auto _ : state) {
    a = F.mul(a, b);
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_ModularMul);

}  // namespace
BENCHMARK_MAIN();
