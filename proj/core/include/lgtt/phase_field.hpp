#pragma once

#include <vector>

#include "lgtt/grid.hpp"
#include "lgtt/types.hpp"

namespace lgtt {

/*
 * Real phase field phi(t1, t2, theta) on a coupling-plane grid times M
 * uniform theta samples, periodic in theta with period 1.
 */
class PhaseField {
 public:
  PhaseField(const TGrid& grid, int M);

  template <class F>
  static PhaseField sample(const TGrid& grid, int M, F&& f) {
    PhaseField phi(grid, M);
    for (int i1 = 0; i1 < grid.n1; ++i1)
      for (int i2 = 0; i2 < grid.n2; ++i2)
        for (int m = 0; m < M; ++m)
          phi.at(i1, i2, m) = f(grid.t1(i1), grid.t2(i2), static_cast<double>(m) / M);
    return phi;
  }

  const TGrid& grid() const { return grid_; }
  int M() const { return M_; }
  double theta(int m) const { return static_cast<double>(m) / M_; }

  double& at(int i1, int i2, int m) { return values_[flat(i1, i2, m)]; }
  const double& at(int i1, int i2, int m) const { return values_[flat(i1, i2, m)]; }

 private:
  size_t flat(int i1, int i2, int m) const {
    return (static_cast<size_t>(grid_.flat(i1, i2))) * static_cast<size_t>(M_) + static_cast<size_t>(m);
  }

  TGrid grid_;
  int M_;
  std::vector<double> values_;
};

/*
 * (d^2/dt1^2 + d^2/dt2^2 + d^2/dtheta^2) phi at one t-node: compact central
 * differences in t, spectral second derivative in theta.  Returns one value
 * per theta sample.
 */
std::vector<double> laplace_line(const PhaseField& phi, int i1, int i2);

/* Max over theta of |laplace_line|. */
double laplace_residual(const PhaseField& phi, int i1, int i2);

/* Whole-grid map of laplace_residual; boundary nodes hold NaN. */
RealGrid laplace_map(const PhaseField& phi);

/*
 * Amplitudes of the double Fourier expansion
 *   phi = sum_{k,n} a_{k,n}(r) exp(2 pi i k theta) exp(i n psi)
 * on an annulus r in [r0, r1] centered at t = 0, psi = arg t.  Each (k, n)
 * amplitude solves the radial equation
 *   a'' + a'/r - ((2 pi k)^2 + n^2 / r^2) a = 0
 * when phi is harmonic.
 */
struct ModeSeparation {
  std::vector<double> radii;
  int k_max = 0;
  int n_max = 0;
  /* amplitudes[(k + k_max) * (2 n_max + 1) + (n + n_max)][i] at radii[i] */
  std::vector<std::vector<cplx>> amplitudes;

  const std::vector<cplx>& amplitude(int k, int n) const;
};

/*
 * Polar resampling (Catmull-Rom bicubic in the t-plane) followed by FFTs in
 * psi and theta.  The radial grid is uniform with spacing close to the grid
 * spacing h; fewer than 8 radial nodes throws AnnulusTooThin, and an annulus
 * that does not fit the grid with a 2h margin throws BoundaryNode.
 */
ModeSeparation mode_separate(const PhaseField& phi, double r0, double r1, int n_psi, int k_max, int n_max);

/*
 * Mode amplitudes of a single-radius boundary sample table values[p*M + m]
 * over n_psi uniform psi samples and M uniform theta samples.  Layout of the
 * result matches ModeSeparation::amplitudes with one radius.  Requires
 * 2*k_max < M and 2*n_max < n_psi; both sample counts must be powers of two.
 */
std::vector<cplx> boundary_mode_amplitudes(const std::vector<double>& values, int n_psi, int M,
                                           int k_max, int n_max);

}  // namespace lgtt
