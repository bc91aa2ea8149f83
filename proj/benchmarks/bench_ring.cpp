#include <benchmark/benchmark.h>

#include <cmath>

#include "lgtt/ring.hpp"
#include "lgtt/types.hpp"

using namespace lgtt;

namespace {

void BM_find_critical_chains(benchmark::State& state) {
  const auto wp = ExpPolynomial::model_b(cplx(1.0, 0.5), std::cosh(0.7));
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto cs = find_critical_chains(wp, N);
    benchmark::DoNotOptimize(cs.chains.data());
  }
}
BENCHMARK(BM_find_critical_chains)->Arg(8)->Arg(64)->Arg(512);

void BM_ring_multiply(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const auto cs = find_critical_chains(ExpPolynomial::model_b(cplx(1.0, 0.0), std::cosh(1.0)), N);
  const auto phi = RingElement::sample(cs, [](cplx x) { return std::exp(x); });
  const auto psi = RingElement::sample(cs, [](cplx x) { return x * x; });
  for (auto _ : state) {
    auto prod = phi * psi;
    benchmark::DoNotOptimize(prod.values().data());
  }
}
BENCHMARK(BM_ring_multiply)->Arg(8)->Arg(64)->Arg(512);

void BM_residue(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const auto cs = find_critical_chains(ExpPolynomial::model_b(cplx(1.0, 0.0), std::cosh(1.0)), N);
  const auto phi = RingElement::sample(cs, [](cplx x) { return std::exp(x); });
  for (auto _ : state) {
    cplx r = residue(cs, phi);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_residue)->Arg(8)->Arg(64)->Arg(512);

/* Full pairing table, dim^2 residue evaluations. */
void BM_eta_pairing_table(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const auto cs = find_critical_chains(ExpPolynomial::model_b(cplx(1.0, 0.0), std::cosh(1.0)), N);
  std::vector<RingElement> basis;
  for (int r = 0; r < cs.R(); ++r)
    for (int j = -N; j <= N; ++j) basis.push_back(RingElement::indicator(cs, r, j));
  for (auto _ : state) {
    cplx acc = 0.0;
    for (const auto& a : basis)
      for (const auto& b : basis) acc += eta_pairing(cs, a, b);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_eta_pairing_table)->Arg(2)->Arg(8)->Arg(16);

void BM_coupling_matrix(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const auto cs = find_critical_chains(ExpPolynomial::model_b(cplx(1.0, 0.0), std::cosh(1.0)), N);
  for (auto _ : state) {
    auto C = coupling_matrix(cs);
    benchmark::DoNotOptimize(C.diag.data());
  }
}
BENCHMARK(BM_coupling_matrix)->Arg(8)->Arg(64)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
