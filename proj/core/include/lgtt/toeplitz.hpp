#pragma once

#include <cmath>

#include "lgtt/symbol.hpp"
#include "lgtt/types.hpp"

namespace lgtt {

/* Deformation constant of the two-chain family: sinh(2 gamma)/2 - gamma. */
inline double b_constant(double gamma) { return 0.5 * std::sinh(2.0 * gamma) - gamma; }

/*
 * Truncated block-Toeplitz representation of a symbol: block (r, s) holds
 * F^{rs}_{k-l} for k, l in [-N, N], laid out chain-major exactly like
 * CriticalChainSet (flat index r (2N+1) + k + N).
 */
struct ToeplitzTruncation {
  int N = 0;
  int R = 1;
  Matrix dense;

  int block_dim() const { return 2 * N + 1; }
  int dim() const { return R * block_dim(); }
  int index(int r, int k) const { return r * block_dim() + k + N; }
};

/*
 * Symbol -> Toeplitz.  Needs every diagonal |d| <= 2N alias-free, hence
 * M >= 4N + 2; below that AliasRisk is thrown.
 */
ToeplitzTruncation fourier_expand(const MetricSymbol& s, int N);

/*
 * Unguarded assembly: diagonals the sample grid cannot resolve wrap onto
 * their alias, so the result is the Toeplitz operator of the grid's own
 * trigonometric interpolant.  Used where the truncation is pinned above
 * the alias-free bound on purpose.
 */
ToeplitzTruncation toeplitz_truncate(const MetricSymbol& s, int N);

/*
 * Toeplitz -> symbol by per-block diagonal averaging followed by Fourier
 * synthesis on M samples (default: smallest power of two >= 4N + 2).
 * Left-inverse of fourier_expand on band-limited symbols.
 */
MetricSymbol fourier_reduce(const ToeplitzTruncation& T, int M = 0);

/*
 * Departure from translation invariance: max over blocks of
 * |g[j][k] - g[j+1][k+1]|.  dim(g) must be a square multiple of R.
 */
double invariance_check(const Matrix& g, int R);

/*
 * Residual of the commutator identity linking the coupling matrix to the
 * theta derivative, on interior blocks |k|, |l| <= N/2.
 *
 * One chain: compares [C^+, T(s^{-1})] against T(d/dtheta s^{-1}).
 * Two chains (gamma > 0 required): compares [C, T(s^{-1})] against
 * T(d/dtheta s^{-1}) + B [Sigma_3 x I, T(s^{-1})].  In both cases the
 * base-point constants in C drop out of the commutator.
 *
 * The derivative side is evaluated pointwise as -s^{-1} s' s^{-1} with a
 * spectral s', which is the true derivative for band-limited s; Toeplitz
 * assembly on both sides reuses whatever diagonals the sample grid
 * resolves, so the comparison stays meaningful for M < 4N + 2 as well.
 */
double commutator_identity_residual(const MetricSymbol& s, int N, double gamma = 0.0);

/*
 * Pointwise reality constraint in symbol form.
 * One chain: max over theta of | |t|^2 |f|^2 - 1 |.
 * Two chains (gamma > 0): the argument is the D-rescaled symbol and the
 * residual is max-norm of (eta0^{-1} g~(theta)) conj(eta0^{-1} g~(-theta)) - I
 * with eta0 = -Sigma_3 / (2 t sinh gamma) and -theta realized by index
 * reflection m -> (M - m) mod M.
 */
double symbol_reality_residual(const MetricSymbol& s, cplx t, double gamma = 0.0);

/* g~ = D^{-1} g D^{-1} with D = diag(e^{+gamma/2}, e^{-gamma/2}); two chains only. */
MetricSymbol rescale_D(const MetricSymbol& g, double gamma);
/* Inverse rescaling: g = D g~ D. */
MetricSymbol rescale_D_inverse(const MetricSymbol& gt, double gamma);

/*
 * Membership residual in SU(1,1) after dividing out a scalar factor:
 * max over theta of the larger of ||u^+ Sigma_3 u - Sigma_3||_max and
 * |det u - 1|, u = sample / scale.  Throws SingularSymbol on a singular
 * sample (no candidate group element).
 */
double su11_residual(const MetricSymbol& gt, double scale = 1.0);

}  // namespace lgtt
