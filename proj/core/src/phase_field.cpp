#include "lgtt/phase_field.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "lgtt/fft.hpp"

namespace lgtt {

namespace {

bool power_of_two(int m) { return m >= 2 && (m & (m - 1)) == 0; }

}  // namespace

PhaseField::PhaseField(const TGrid& grid, int M) : grid_(grid), M_(M) {
  grid.validate();
  if (!power_of_two(M)) throw std::invalid_argument("theta sample count must be a power of two >= 2");
  values_.assign(static_cast<size_t>(grid.size()) * static_cast<size_t>(M), 0.0);
}

std::vector<double> laplace_line(const PhaseField& phi, int i1, int i2) {
  const TGrid& g = phi.grid();
  g.require_interior(i1, i2, 1);
  const int M = phi.M();
  const double inv_h2 = 1.0 / (g.h * g.h);

  std::vector<cplx> line(static_cast<size_t>(M));
  for (int m = 0; m < M; ++m) line[static_cast<size_t>(m)] = cplx(phi.at(i1, i2, m), 0.0);
  std::vector<cplx> theta2 = spectral_second_derivative(line);

  std::vector<double> out(static_cast<size_t>(M));
  for (int m = 0; m < M; ++m) {
    const double d11 = (phi.at(i1 + 1, i2, m) - 2.0 * phi.at(i1, i2, m) + phi.at(i1 - 1, i2, m)) * inv_h2;
    const double d22 = (phi.at(i1, i2 + 1, m) - 2.0 * phi.at(i1, i2, m) + phi.at(i1, i2 - 1, m)) * inv_h2;
    out[static_cast<size_t>(m)] = d11 + d22 + theta2[static_cast<size_t>(m)].real();
  }
  return out;
}

double laplace_residual(const PhaseField& phi, int i1, int i2) {
  double worst = 0.0;
  for (double v : laplace_line(phi, i1, i2)) worst = std::max(worst, std::abs(v));
  return worst;
}

RealGrid laplace_map(const PhaseField& phi) {
  const TGrid& g = phi.grid();
  RealGrid out(g);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int i1 = 0; i1 < g.n1; ++i1)
    for (int i2 = 0; i2 < g.n2; ++i2)
      out.at(i1, i2) = g.interior(i1, i2, 1) ? laplace_residual(phi, i1, i2) : nan;
  return out;
}

const std::vector<cplx>& ModeSeparation::amplitude(int k, int n) const {
  if (k < -k_max || k > k_max || n < -n_max || n > n_max)
    throw std::out_of_range("mode index out of range");
  return amplitudes[static_cast<size_t>((k + k_max) * (2 * n_max + 1) + (n + n_max))];
}

namespace {

/* Catmull-Rom weights for the four nodes around a cell at fraction s. */
void catmull_rom_weights(double s, double w[4]) {
  const double s2 = s * s;
  const double s3 = s2 * s;
  w[0] = 0.5 * (-s3 + 2.0 * s2 - s);
  w[1] = 0.5 * (3.0 * s3 - 5.0 * s2 + 2.0);
  w[2] = 0.5 * (-3.0 * s3 + 4.0 * s2 + s);
  w[3] = 0.5 * (s3 - s2);
}

struct BicubicPatch {
  int i1 = 0;  // lowest node of the 4x4 patch along t1
  int i2 = 0;
  double w1[4];
  double w2[4];
};

BicubicPatch patch_at(const TGrid& g, double x, double y) {
  const double u = (x - g.t1_min) / g.h;
  const double v = (y - g.t2_min) / g.h;
  int c1 = static_cast<int>(std::floor(u));
  int c2 = static_cast<int>(std::floor(v));
  /* A point exactly on the last cell edge still uses the cell below it. */
  c1 = std::min(c1, g.n1 - 2);
  c2 = std::min(c2, g.n2 - 2);
  if (c1 < 1 || c1 + 2 > g.n1 - 1 || c2 < 1 || c2 + 2 > g.n2 - 1) {
    std::ostringstream os;
    os << "resample point (" << x << ", " << y << ") lacks a full bicubic patch";
    throw BoundaryNode(os.str());
  }
  BicubicPatch p;
  p.i1 = c1 - 1;
  p.i2 = c2 - 1;
  catmull_rom_weights(u - c1, p.w1);
  catmull_rom_weights(v - c2, p.w2);
  return p;
}

}  // namespace

ModeSeparation mode_separate(const PhaseField& phi, double r0, double r1, int n_psi, int k_max, int n_max) {
  const TGrid& g = phi.grid();
  if (!(r0 > 0.0) || !(r1 > r0)) throw std::invalid_argument("annulus needs 0 < r0 < r1");
  if (!power_of_two(n_psi)) throw std::invalid_argument("angular sample count must be a power of two >= 2");
  if (k_max < 0 || 2 * k_max >= phi.M()) throw std::invalid_argument("theta mode cutoff too large for grid");
  if (n_max < 0 || 2 * n_max >= n_psi) throw std::invalid_argument("angular mode cutoff too large for grid");

  const int n_r = static_cast<int>(std::floor((r1 - r0) / g.h)) + 1;
  if (n_r < 8) {
    std::ostringstream os;
    os << "annulus [" << r0 << ", " << r1 << "] holds only " << n_r << " radial nodes at spacing " << g.h;
    throw AnnulusTooThin(os.str());
  }

  const double margin = 2.0 * g.h;
  const double t1_max = g.t1(g.n1 - 1);
  const double t2_max = g.t2(g.n2 - 1);
  if (g.t1_min > -r1 - margin || t1_max < r1 + margin || g.t2_min > -r1 - margin || t2_max < r1 + margin) {
    std::ostringstream os;
    os << "annulus of outer radius " << r1 << " does not fit the grid with a 2h margin";
    throw BoundaryNode(os.str());
  }

  const int M = phi.M();
  ModeSeparation out;
  out.k_max = k_max;
  out.n_max = n_max;
  out.radii.resize(static_cast<size_t>(n_r));
  const double dr = (r1 - r0) / (n_r - 1);
  for (int i = 0; i < n_r; ++i) out.radii[static_cast<size_t>(i)] = r0 + dr * i;

  out.amplitudes.assign(static_cast<size_t>((2 * k_max + 1) * (2 * n_max + 1)),
                        std::vector<cplx>(static_cast<size_t>(n_r)));

  std::vector<std::vector<cplx>> rows(static_cast<size_t>(n_psi));
  for (int i = 0; i < n_r; ++i) {
    const double r = out.radii[static_cast<size_t>(i)];
    /* Resample onto the polar ring, then transform theta rows and psi columns. */
    for (int p = 0; p < n_psi; ++p) {
      const double psi = two_pi * p / n_psi;
      const BicubicPatch pt = patch_at(g, r * std::cos(psi), r * std::sin(psi));
      std::vector<cplx>& row = rows[static_cast<size_t>(p)];
      row.assign(static_cast<size_t>(M), cplx(0.0, 0.0));
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          const double w = pt.w1[a] * pt.w2[b];
          for (int m = 0; m < M; ++m)
            row[static_cast<size_t>(m)] += w * phi.at(pt.i1 + a, pt.i2 + b, m);
        }
      }
      row = fft_forward(row);
    }
    for (int k = -k_max; k <= k_max; ++k) {
      const size_t kbin = static_cast<size_t>(bin_of_freq(k, M));
      std::vector<cplx> col(static_cast<size_t>(n_psi));
      for (int p = 0; p < n_psi; ++p) col[static_cast<size_t>(p)] = rows[static_cast<size_t>(p)][kbin];
      col = fft_forward(col);
      for (int n = -n_max; n <= n_max; ++n) {
        out.amplitudes[static_cast<size_t>((k + k_max) * (2 * n_max + 1) + (n + n_max))]
                      [static_cast<size_t>(i)] = col[static_cast<size_t>(bin_of_freq(n, n_psi))];
      }
    }
  }
  return out;
}

std::vector<cplx> boundary_mode_amplitudes(const std::vector<double>& values, int n_psi, int M,
                                           int k_max, int n_max) {
  if (!power_of_two(n_psi) || !power_of_two(M))
    throw std::invalid_argument("boundary sample counts must be powers of two >= 2");
  if (values.size() != static_cast<size_t>(n_psi) * static_cast<size_t>(M))
    throw std::invalid_argument("boundary table size does not match n_psi*M");
  if (k_max < 0 || 2 * k_max >= M) throw std::invalid_argument("theta mode cutoff too large for table");
  if (n_max < 0 || 2 * n_max >= n_psi) throw std::invalid_argument("angular mode cutoff too large for table");

  std::vector<std::vector<cplx>> rows(static_cast<size_t>(n_psi));
  for (int p = 0; p < n_psi; ++p) {
    std::vector<cplx> row(static_cast<size_t>(M));
    for (int m = 0; m < M; ++m)
      row[static_cast<size_t>(m)] = cplx(values[static_cast<size_t>(p * M + m)], 0.0);
    rows[static_cast<size_t>(p)] = fft_forward(row);
  }

  std::vector<cplx> out(static_cast<size_t>((2 * k_max + 1) * (2 * n_max + 1)));
  for (int k = -k_max; k <= k_max; ++k) {
    const size_t kbin = static_cast<size_t>(bin_of_freq(k, M));
    std::vector<cplx> col(static_cast<size_t>(n_psi));
    for (int p = 0; p < n_psi; ++p) col[static_cast<size_t>(p)] = rows[static_cast<size_t>(p)][kbin];
    col = fft_forward(col);
    for (int n = -n_max; n <= n_max; ++n)
      out[static_cast<size_t>((k + k_max) * (2 * n_max + 1) + (n + n_max))] =
          col[static_cast<size_t>(bin_of_freq(n, n_psi))];
  }
  return out;
}

}  // namespace lgtt
