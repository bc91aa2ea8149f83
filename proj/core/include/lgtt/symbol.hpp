#pragma once

#include <utility>
#include <vector>

#include "lgtt/errors.hpp"
#include "lgtt/types.hpp"

namespace lgtt {

/*
 * Matrix-valued periodic symbol sampled at theta_m = m / M, theta in [0, 1).
 * R is the chain count: scalar symbols for one chain, 2x2 blocks for two,
 * block order (a, b) matching base points (-gamma, +gamma).
 */
class MetricSymbol {
 public:
  MetricSymbol(int R, int M);

  template <class F>
  static MetricSymbol from_function(int R, int M, F&& f) {
    MetricSymbol s(R, M);
    for (int m = 0; m < M; ++m) s.set_sample(m, f(static_cast<double>(m) / M));
    return s;
  }
  /* Exact synthesis of sum_k f_k exp(2 pi i k theta) on the sample grid. */
  static MetricSymbol from_coefficients(int R, int M, const std::vector<std::pair<int, Matrix>>& coeffs);

  int R() const { return R_; }
  int M() const { return M_; }
  double theta(int m) const { return static_cast<double>(m) / M_; }

  const Matrix& sample(int m) const { return samples_[static_cast<size_t>(m)]; }
  void set_sample(int m, Matrix value);

  /* Fourier coefficient of exp(2 pi i k theta); exact for band-limited
   * content, aliased beyond |k| < M/2. */
  Matrix coefficient(int k) const;
  /* Coefficients for k in [-kmax, kmax] via one FFT per matrix entry. */
  std::vector<Matrix> coefficients(int kmax) const;

  MetricSymbol pointwise_inverse() const;  // SingularSymbol at the first bad sample
  MetricSymbol pointwise_product(const MetricSymbol& rhs) const;
  MetricSymbol reflected() const;  // theta -> -theta: sample m -> (M - m) mod M
  MetricSymbol theta_derivative() const;  // spectral

 private:
  int R_;
  int M_;
  std::vector<Matrix> samples_;
};

/* Max over samples of the entrywise distance between two symbols. */
double max_sample_diff(const MetricSymbol& a, const MetricSymbol& b);

}  // namespace lgtt
