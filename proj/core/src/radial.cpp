#include "lgtt/radial.hpp"

#include "lgtt/types.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lgtt {

namespace {

constexpr double kLogDerivTol = 1e-6;
constexpr int kMaxSteps = 1 << 22;

struct State {
  double h;
  double dh;
};

State rhs(int k, int n, double r, const State& y) {
  const double kap = two_pi * std::abs(k);
  return {y.dh, (kap * kap + static_cast<double>(n) * n / (r * r)) * y.h - y.dh / r};
}

State rk4_step(int k, int n, double r, const State& y, double dt) {
  const State k1 = rhs(k, n, r, y);
  const State k2 = rhs(k, n, r + 0.5 * dt, {y.h + 0.5 * dt * k1.h, y.dh + 0.5 * dt * k1.dh});
  const State k3 = rhs(k, n, r + 0.5 * dt, {y.h + 0.5 * dt * k2.h, y.dh + 0.5 * dt * k2.dh});
  const State k4 = rhs(k, n, r + dt, {y.h + dt * k3.h, y.dh + dt * k3.dh});
  return {y.h + dt / 6.0 * (k1.h + 2.0 * k2.h + 2.0 * k3.h + k4.h),
          y.dh + dt / 6.0 * (k1.dh + 2.0 * k2.dh + 2.0 * k3.dh + k4.dh)};
}

/* Asymptotic log-derivative of the decaying branch at argument z = kappa r. */
double decay_log_derivative(double z, int n) {
  return -1.0 - 1.0 / (2.0 * z) - (4.0 * n * n - 1.0) / (8.0 * z * z);
}

/* One backward sweep with `steps` RK4 steps; fills h at every output node
 * (steps is a multiple of n_out - 1) and returns the log-derivative at r0. */
double integrate_backward(int k, int n, double r0, double r1, int steps, int n_out,
                          std::vector<double>& h_out) {
  const double kap = two_pi * std::abs(k);
  const double dt = -(r1 - r0) / steps;
  const int stride = steps / (n_out - 1);
  State y{1.0, kap * decay_log_derivative(kap * r1, n)};
  h_out.assign(static_cast<size_t>(n_out), 0.0);
  h_out[static_cast<size_t>(n_out - 1)] = y.h;
  for (int s = 0; s < steps; ++s) {
    const double r = r1 + dt * s;
    y = rk4_step(k, n, r, y, dt);
    if ((s + 1) % stride == 0) h_out[static_cast<size_t>(n_out - 1 - (s + 1) / stride)] = y.h;
  }
  return y.dh / y.h;
}

}  // namespace

RadialProfile solve_radial_decaying(int k, int n, double r0, double r1, double amplitude, int n_out) {
  if (!(r0 > 0.0) || !(r1 > r0)) throw std::invalid_argument("radial interval needs 0 < r0 < r1");
  if (n_out < 2) throw std::invalid_argument("need at least two output nodes");
  if (amplitude == 0.0) throw std::invalid_argument("amplitude must be nonzero");

  RadialProfile p;
  p.k = k;
  p.n = n;
  p.r.resize(static_cast<size_t>(n_out));
  const double dr = (r1 - r0) / (n_out - 1);
  for (int i = 0; i < n_out; ++i) p.r[static_cast<size_t>(i)] = r0 + dr * i;
  p.h.assign(static_cast<size_t>(n_out), 0.0);

  if (k == 0) {
    for (int i = 0; i < n_out; ++i) {
      const double r = p.r[static_cast<size_t>(i)];
      p.h[static_cast<size_t>(i)] = n == 0 ? amplitude : amplitude * std::pow(r / r0, -std::abs(n));
    }
    return p;
  }

  int steps = n_out - 1;
  while (steps < 256) steps *= 2;
  std::vector<double> h;
  double logderiv = integrate_backward(k, n, r0, r1, steps, n_out, h);
  while (true) {
    if (2 * steps > kMaxSteps) throw Error("radial integration did not converge in step budget");
    steps *= 2;
    std::vector<double> h2;
    const double ld2 = integrate_backward(k, n, r0, r1, steps, n_out, h2);
    const bool done = std::abs(ld2 - logderiv) < kLogDerivTol;
    logderiv = ld2;
    h = std::move(h2);
    if (done) break;
  }

  const double scale = amplitude / h.front();
  for (int i = 0; i < n_out; ++i) p.h[static_cast<size_t>(i)] = scale * h[static_cast<size_t>(i)];
  return p;
}

double asymptotic_decay_check(const std::vector<double>& r, const std::vector<double>& h) {
  if (r.size() != h.size()) throw std::invalid_argument("radius and amplitude arrays differ in length");
  if (r.size() < 4) throw std::invalid_argument("need at least four samples");
  const size_t n = r.size();
  const double dr = r[1] - r[0];
  if (!(dr > 0.0)) throw std::invalid_argument("radii must be ascending");
  for (size_t i = 1; i + 1 < n; ++i)
    if (std::abs((r[i + 1] - r[i]) - dr) > 1e-9 * dr)
      throw std::invalid_argument("radii must be uniformly spaced");

  if (std::abs(h[n - 1]) > std::abs(h[0]) * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "profile grows outward: |h| = " << std::abs(h[0]) << " at r = " << r[0] << " but "
       << std::abs(h[n - 1]) << " at r = " << r[n - 1];
    throw NonDecaying(os.str());
  }
  if (h[n - 1] == 0.0) throw std::invalid_argument("vanishing amplitude at outer radius");
  const double deriv = (3.0 * h[n - 1] - 4.0 * h[n - 2] + h[n - 3]) / (2.0 * dr);
  return deriv / h[n - 1];
}

double profile_value(const RadialProfile& p, double r) {
  const size_t n = p.r.size();
  if (n != p.h.size() || n < 2) throw std::invalid_argument("profile needs matching r/h samples");
  const double rmin = p.r.front();
  const double rmax = p.r.back();
  const double slack = 1e-12 * std::max(1.0, std::abs(rmax));
  if (r < rmin - slack || r > rmax + slack)
    throw std::invalid_argument("radius outside the sampled profile range");
  const double dr = (rmax - rmin) / static_cast<double>(n - 1);
  const double u = (r - rmin) / dr;

  if (n < 4) {
    const int c = std::min(static_cast<int>(u), static_cast<int>(n) - 2);
    const double s = u - c;
    return p.h[static_cast<size_t>(c)] * (1.0 - s) + p.h[static_cast<size_t>(c + 1)] * s;
  }

  int base = static_cast<int>(std::floor(u)) - 1;
  base = std::max(0, std::min(base, static_cast<int>(n) - 4));
  const double x = u - base;
  const double w0 = -(x - 1.0) * (x - 2.0) * (x - 3.0) / 6.0;
  const double w1 = x * (x - 2.0) * (x - 3.0) / 2.0;
  const double w2 = -x * (x - 1.0) * (x - 3.0) / 2.0;
  const double w3 = x * (x - 1.0) * (x - 2.0) / 6.0;
  const size_t b = static_cast<size_t>(base);
  return w0 * p.h[b] + w1 * p.h[b + 1] + w2 * p.h[b + 2] + w3 * p.h[b + 3];
}

}  // namespace lgtt
