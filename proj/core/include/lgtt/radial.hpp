#pragma once

#include <vector>

#include "lgtt/errors.hpp"

namespace lgtt {

/*
 * Sampled radial amplitude of one (k, n) mode, nodes ascending in r.
 * Solves h'' + h'/r - ((2 pi k)^2 + n^2 / r^2) h = 0.
 */
struct RadialProfile {
  int k = 0;
  int n = 0;
  std::vector<double> r;
  std::vector<double> h;
};

/*
 * Decaying solution of the radial mode equation on [r0, r1], normalized to
 * the given amplitude at r0 and sampled on n_out uniform nodes.
 *
 * k = n = 0 selects the bounded solution (constant); k = 0, n != 0 the
 * power-law decay (r/r0)^{-|n|}; k != 0 integrates backward from r1 with the
 * asymptotic log-derivative of the exponentially decaying branch as the
 * outer boundary condition, halving the step until the log-derivative at r0
 * moves by less than 1e-6, with the step count kept a multiple of n_out - 1
 * so output nodes coincide with integration nodes.
 */
RadialProfile solve_radial_decaying(int k, int n, double r0, double r1, double amplitude, int n_out);

/*
 * One-sided three-point log-derivative h'/h at the outermost sample of a
 * uniformly spaced profile.  For the decaying branch of mode k this tends to
 * -2 pi |k| as r grows.  Throws NonDecaying if the profile is larger at the
 * outer end than at the inner end.
 */
double asymptotic_decay_check(const std::vector<double>& r, const std::vector<double>& h);

/*
 * Profile value at radius r by cubic Lagrange interpolation on the four
 * nearest samples (one-sided at the ends).  r must lie inside the sampled
 * range; the profile must be uniform with at least two nodes.
 */
double profile_value(const RadialProfile& p, double r);

}  // namespace lgtt
