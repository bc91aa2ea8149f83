#include "lgtt/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace lgtt {
namespace {

/*
 * One cached plan pair per transform size, each with its own fftw buffer.
 * FFTW plan creation and shared-buffer execution are both guarded by the
 * mutex; transforms here are small (M <= a few thousand), so serializing
 * them costs nothing measurable.
 */
struct PlanEntry {
  fftw_complex* buf = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  ~PlanEntry() {
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
    if (buf) fftw_free(buf);
  }
};

std::mutex g_mutex;
std::map<int, PlanEntry>& plan_cache() {
  static std::map<int, PlanEntry> cache;
  return cache;
}

PlanEntry& entry_for(int n) {
  auto& cache = plan_cache();
  auto it = cache.find(n);
  if (it == cache.end()) {
    PlanEntry& e = cache[n];
    e.buf = fftw_alloc_complex(static_cast<size_t>(n));
    if (!e.buf) throw std::bad_alloc();
    e.fwd = fftw_plan_dft_1d(n, e.buf, e.buf, FFTW_FORWARD, FFTW_ESTIMATE);
    e.bwd = fftw_plan_dft_1d(n, e.buf, e.buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    return e;
  }
  return it->second;
}

std::vector<cplx> run(const std::vector<cplx>& in, bool forward) {
  const int n = static_cast<int>(in.size());
  if (n == 0) throw std::invalid_argument("fft: empty input");
  std::lock_guard<std::mutex> lock(g_mutex);
  PlanEntry& e = entry_for(n);
  for (int j = 0; j < n; ++j) {
    e.buf[j][0] = in[static_cast<size_t>(j)].real();
    e.buf[j][1] = in[static_cast<size_t>(j)].imag();
  }
  fftw_execute(forward ? e.fwd : e.bwd);
  std::vector<cplx> out(static_cast<size_t>(n));
  const double scale = forward ? 1.0 / n : 1.0;
  for (int j = 0; j < n; ++j) {
    out[static_cast<size_t>(j)] = cplx(e.buf[j][0] * scale, e.buf[j][1] * scale);
  }
  return out;
}

}  // namespace

std::vector<cplx> fft_forward(const std::vector<cplx>& samples) { return run(samples, true); }

std::vector<cplx> fft_inverse(const std::vector<cplx>& coeffs) { return run(coeffs, false); }

std::vector<cplx> spectral_derivative(const std::vector<cplx>& samples) {
  const int M = static_cast<int>(samples.size());
  std::vector<cplx> c = fft_forward(samples);
  for (int bin = 0; bin < M; ++bin) {
    const int k = signed_freq(bin, M);
    const bool nyquist = (M % 2 == 0) && bin == M / 2;
    c[static_cast<size_t>(bin)] *= nyquist ? cplx(0.0, 0.0) : cplx(0.0, two_pi * k);
  }
  return fft_inverse(c);
}

std::vector<cplx> spectral_second_derivative(const std::vector<cplx>& samples) {
  const int M = static_cast<int>(samples.size());
  std::vector<cplx> c = fft_forward(samples);
  for (int bin = 0; bin < M; ++bin) {
    const double w = two_pi * signed_freq(bin, M);
    c[static_cast<size_t>(bin)] *= -w * w;
  }
  return fft_inverse(c);
}

}  // namespace lgtt
