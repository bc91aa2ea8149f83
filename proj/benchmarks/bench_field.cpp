#include <benchmark/benchmark.h>

#include <cmath>

#include "lgtt/grid.hpp"
#include "lgtt/metric_field.hpp"
#include "lgtt/phase_field.hpp"
#include "lgtt/radial.hpp"
#include "lgtt/reduced_field.hpp"
#include "lgtt/ring.hpp"
#include "lgtt/types.hpp"

using namespace lgtt;

namespace {

TGrid centered_grid(int n, double h, double c1 = 0.0, double c2 = 0.0) {
  TGrid g;
  g.n1 = n;
  g.n2 = n;
  g.h = h;
  g.t1_min = c1 - h * (n - 1) / 2.0;
  g.t2_min = c2 - h * (n - 1) / 2.0;
  return g;
}

/* Diagonal positive metric over a model A table; values are irrelevant to cost. */
MatrixGrid diagonal_metric(const TGrid& grid, int dim) {
  return MatrixGrid::sample(grid, [&](int i1, int i2) {
    const double t1 = grid.t1(i1);
    const double t2 = grid.t2(i2);
    Matrix g = Matrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) g(k, k) = std::exp(0.1 * std::cos(k + t1) + 0.05 * t2);
    return g;
  });
}

SymbolField boost_field(const TGrid& grid, int M) {
  return SymbolField::sample(grid, 2, M, [](double t1, double t2, double theta) {
    const double s = (0.3 + 0.2 * t1) * std::cos(two_pi * theta);
    const double chi = (0.4 + 0.1 * t2) * std::sin(two_pi * theta);
    Matrix g(2, 2);
    g(0, 0) = std::cosh(s);
    g(1, 1) = std::cosh(s);
    g(0, 1) = cplx(std::cos(chi), std::sin(chi)) * std::sinh(s);
    g(1, 0) = std::conj(g(0, 1));
    return g;
  });
}

void BM_zero_curvature_node(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const auto cs = find_critical_chains(ExpPolynomial::model_a(cplx(1.0, 0.0)), N);
  const auto C = coupling_matrix(cs);
  const auto g = diagonal_metric(centered_grid(5, 0.05, 0.4, -0.2), cs.dim());
  for (auto _ : state) {
    double r = zero_curvature_residual(g, C, 2, 2);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_zero_curvature_node)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_second_zero_curvature_node(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const auto cs = find_critical_chains(ExpPolynomial::model_a(cplx(1.0, 0.0)), N);
  const auto C = coupling_matrix(cs);
  const auto g = diagonal_metric(centered_grid(5, 0.05, 0.4, -0.2), cs.dim());
  for (auto _ : state) {
    double r = second_zero_curvature_residual(g, C, 2, 2);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_second_zero_curvature_node)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

/* Both flatness routes plus their gap at one node. */
void BM_ttstar_oracle_node(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  int M = 1;
  while (M < 4 * N + 2) M *= 2;
  const auto phi = PhaseField::sample(centered_grid(5, 0.02, 2.0, 0.5), M, [](double t1, double t2, double theta) {
    return 0.3 * std::cos(two_pi * theta) * t1 + 0.2 * std::sin(2.0 * two_pi * theta) * t2;
  });
  for (auto _ : state) {
    auto oracle = symbol_ttstar_oracle(phi, N, 2, 2);
    benchmark::DoNotOptimize(oracle.gap);
  }
}
BENCHMARK(BM_ttstar_oracle_node)->Arg(8)->Arg(16);

void BM_pcf_node(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  const auto f = boost_field(centered_grid(5, 0.1, 0.5, -0.3), M);
  for (auto _ : state) {
    double r = pcf_residual(f, 2, 2);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_pcf_node)->Arg(16)->Arg(64)->Arg(256);

void BM_field_equation_node(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  const ReducedConnection conn(boost_field(centered_grid(5, 0.1, 0.5, -0.3), M), b_constant(0.5));
  for (auto _ : state) {
    double r = su11_field_residual(conn, 2, 2);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_field_equation_node)->Arg(16)->Arg(64)->Arg(256);

void BM_solve_radial(benchmark::State& state) {
  const int n_out = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto p = solve_radial_decaying(1, 0, 0.4, 5.0, 1.0, n_out);
    benchmark::DoNotOptimize(p.h.data());
  }
}
BENCHMARK(BM_solve_radial)->Arg(1025)->Arg(4097)->Arg(16385);

/* Polar resampling plus the psi and theta FFTs. */
void BM_mode_separate(benchmark::State& state) {
  const auto phi = PhaseField::sample(centered_grid(81, 0.05), 8, [](double t1, double t2, double theta) {
    const double r2 = t1 * t1 + t2 * t2;
    return std::exp(-r2) * (1.0 + 0.3 * std::cos(two_pi * theta));
  });
  for (auto _ : state) {
    auto modes = mode_separate(phi, 0.5, 1.5, 64, 2, 2);
    benchmark::DoNotOptimize(modes.radii.data());
  }
}
BENCHMARK(BM_mode_separate);

}  // namespace

BENCHMARK_MAIN();
