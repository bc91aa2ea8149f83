#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "lgtt/symbol.hpp"
#include "lgtt/toeplitz.hpp"
#include "lgtt/types.hpp"

using namespace lgtt;

namespace {

int pow2_at_least(int n) {
  int m = 1;
  while (m < n) m *= 2;
  return m;
}

/* Identity plus a small band-limited perturbation; invertible by construction. */
MetricSymbol random_symbol(int R, int M, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> u(-0.05, 0.05);
  std::vector<std::pair<int, Matrix>> coeffs;
  coeffs.emplace_back(0, Matrix::Identity(R, R));
  for (int k = 1; k <= 2; ++k) {
    Matrix a(R, R);
    for (int i = 0; i < R; ++i)
      for (int j = 0; j < R; ++j) a(i, j) = cplx(u(gen), u(gen));
    coeffs.emplace_back(k, a);
    coeffs.emplace_back(-k, a.adjoint().eval());
  }
  return MetricSymbol::from_coefficients(R, M, coeffs);
}

MetricSymbol boost_family(int M, double gamma) {
  const double scale = 1.0 / (2.0 * std::sinh(gamma));
  return MetricSymbol::from_function(2, M, [&](double theta) {
    const double s = 0.3 * std::cos(two_pi * theta);
    const double chi = 0.2 * std::sin(two_pi * theta);
    Matrix g(2, 2);
    g(0, 0) = std::cosh(s);
    g(1, 1) = std::cosh(s);
    g(0, 1) = cplx(std::cos(chi), std::sin(chi)) * std::sinh(s);
    g(1, 0) = std::conj(g(0, 1));
    return (scale * g).eval();
  });
}

void BM_fourier_expand(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const auto s = random_symbol(1, pow2_at_least(4 * N + 2), 7);
  for (auto _ : state) {
    auto T = fourier_expand(s, N);
    benchmark::DoNotOptimize(T.dense.data());
  }
}
BENCHMARK(BM_fourier_expand)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_fourier_reduce(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const auto T = fourier_expand(random_symbol(1, pow2_at_least(4 * N + 2), 7), N);
  for (auto _ : state) {
    auto s = fourier_reduce(T);
    benchmark::DoNotOptimize(s.sample(0).data());
  }
}
BENCHMARK(BM_fourier_reduce)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_commutator_identity_scalar(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const auto s = random_symbol(1, pow2_at_least(4 * N + 2), 11);
  for (auto _ : state) {
    double r = commutator_identity_residual(s, N);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_commutator_identity_scalar)->Arg(8)->Arg(16)->Arg(32);

void BM_commutator_identity_block(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const double gamma = 0.5;
  const auto s = boost_family(pow2_at_least(4 * N + 2), gamma);
  for (auto _ : state) {
    double r = commutator_identity_residual(s, N, gamma);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_commutator_identity_block)->Arg(8)->Arg(16)->Arg(32);

void BM_symbol_reality(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  const double gamma = 1.0;
  const cplx t(0.8, 0.6);
  const double scale = 1.0 / (2.0 * std::abs(t) * std::sinh(gamma));
  const auto s = MetricSymbol::from_function(2, M, [&](double theta) {
    const double sv = 0.3 * std::cos(two_pi * theta);
    const double chi = 0.2 * std::sin(two_pi * theta);
    Matrix g(2, 2);
    g(0, 0) = std::cosh(sv);
    g(1, 1) = std::cosh(sv);
    g(0, 1) = cplx(std::cos(chi), std::sin(chi)) * std::sinh(sv);
    g(1, 0) = std::conj(g(0, 1));
    return (scale * g).eval();
  });
  for (auto _ : state) {
    double r = symbol_reality_residual(s, t, gamma);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_symbol_reality)->Arg(64)->Arg(256)->Arg(1024);

void BM_su11_residual(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  const auto s = boost_family(M, 1.0);
  const double scale = 1.0 / (2.0 * std::sinh(1.0));
  for (auto _ : state) {
    double r = su11_residual(s, scale);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_su11_residual)->Arg(64)->Arg(256)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
