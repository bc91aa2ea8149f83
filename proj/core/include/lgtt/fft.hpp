#pragma once

#include <vector>

#include "lgtt/types.hpp"

namespace lgtt {

/*
 * Thin wrapper over FFTW3 (double interface, FFTW_ESTIMATE plans only, so
 * repeated runs of the same binary stay bit-for-bit reproducible).  All
 * transforms act on sequences sampled at theta_j = j / M, period 1.
 *
 * Conventions:
 *   fft_forward:  c[m] = (1/M) sum_j x[j] exp(-2 pi i m j / M)
 *   fft_inverse:  x[j] =       sum_m c[m] exp(+2 pi i m j / M)
 * so fft_inverse(fft_forward(x)) == x up to rounding, and c[bin] is the
 * coefficient of exp(2 pi i k theta) with k = signed_freq(bin, M).
 */

std::vector<cplx> fft_forward(const std::vector<cplx>& samples);
std::vector<cplx> fft_inverse(const std::vector<cplx>& coeffs);

/* Signed frequency of an FFT bin: bin for bin < M/2, bin - M otherwise. */
inline int signed_freq(int bin, int M) { return bin < (M + 1) / 2 ? bin : bin - M; }

/* Bin holding frequency k (any integer k; wraps modulo M). */
inline int bin_of_freq(int k, int M) { return ((k % M) + M) % M; }

/*
 * Spectral d/dtheta of a periodic sequence: multiply coefficient k by
 * 2 pi i k.  The Nyquist bin (k = -M/2 for even M) is zeroed; band-limited
 * data never populates it and the sign of its frequency is ambiguous.
 */
std::vector<cplx> spectral_derivative(const std::vector<cplx>& samples);

/* Spectral d^2/dtheta^2; the Nyquist bin picks up -(pi M)^2 as usual. */
std::vector<cplx> spectral_second_derivative(const std::vector<cplx>& samples);

}  // namespace lgtt
