#include "lgtt/symbol.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "lgtt/fft.hpp"

namespace lgtt {

namespace {

bool power_of_two(int m) { return m >= 2 && (m & (m - 1)) == 0; }

}  // namespace

MetricSymbol::MetricSymbol(int R, int M) : R_(R), M_(M) {
  if (R != 1 && R != 2) throw std::invalid_argument("symbol chain count must be 1 or 2");
  if (!power_of_two(M)) throw std::invalid_argument("symbol grid size must be a power of two >= 2");
  samples_.assign(static_cast<size_t>(M), Matrix::Zero(R, R));
}

MetricSymbol MetricSymbol::from_coefficients(int R, int M,
                                             const std::vector<std::pair<int, Matrix>>& coeffs) {
  MetricSymbol s(R, M);
  for (const auto& [k, f] : coeffs) {
    if (f.rows() != R || f.cols() != R) throw std::invalid_argument("coefficient block has wrong shape");
    for (int m = 0; m < M; ++m) {
      cplx phase = std::exp(iu * (two_pi * k * static_cast<double>(m) / M));
      s.samples_[static_cast<size_t>(m)] += phase * f;
    }
  }
  return s;
}

void MetricSymbol::set_sample(int m, Matrix value) {
  if (m < 0 || m >= M_) throw std::out_of_range("symbol sample index out of range");
  if (value.rows() != R_ || value.cols() != R_)
    throw std::invalid_argument("symbol sample has wrong shape");
  samples_[static_cast<size_t>(m)] = std::move(value);
}

Matrix MetricSymbol::coefficient(int k) const {
  const int bin = bin_of_freq(k, M_);
  Matrix out(R_, R_);
  std::vector<cplx> line(static_cast<size_t>(M_));
  for (int r = 0; r < R_; ++r) {
    for (int s = 0; s < R_; ++s) {
      for (int m = 0; m < M_; ++m) line[static_cast<size_t>(m)] = samples_[static_cast<size_t>(m)](r, s);
      out(r, s) = fft_forward(line)[static_cast<size_t>(bin)];
    }
  }
  return out;
}

std::vector<Matrix> MetricSymbol::coefficients(int kmax) const {
  if (kmax < 0) throw std::invalid_argument("coefficient range must be nonnegative");
  std::vector<Matrix> out(static_cast<size_t>(2 * kmax + 1), Matrix::Zero(R_, R_));
  std::vector<cplx> line(static_cast<size_t>(M_));
  for (int r = 0; r < R_; ++r) {
    for (int s = 0; s < R_; ++s) {
      for (int m = 0; m < M_; ++m) line[static_cast<size_t>(m)] = samples_[static_cast<size_t>(m)](r, s);
      std::vector<cplx> c = fft_forward(line);
      for (int k = -kmax; k <= kmax; ++k)
        out[static_cast<size_t>(k + kmax)](r, s) = c[static_cast<size_t>(bin_of_freq(k, M_))];
    }
  }
  return out;
}

MetricSymbol MetricSymbol::pointwise_inverse() const {
  MetricSymbol out(R_, M_);
  for (int m = 0; m < M_; ++m) {
    Eigen::FullPivLU<Matrix> lu(samples_[static_cast<size_t>(m)]);
    if (!lu.isInvertible()) {
      std::ostringstream os;
      os << "symbol sample " << m << " of " << M_ << " is not invertible";
      throw SingularSymbol(os.str());
    }
    out.samples_[static_cast<size_t>(m)] = lu.inverse();
  }
  return out;
}

MetricSymbol MetricSymbol::pointwise_product(const MetricSymbol& rhs) const {
  if (R_ != rhs.R_ || M_ != rhs.M_) throw TruncationMismatch("symbol shapes differ in product");
  MetricSymbol out(R_, M_);
  for (int m = 0; m < M_; ++m)
    out.samples_[static_cast<size_t>(m)] =
        samples_[static_cast<size_t>(m)] * rhs.samples_[static_cast<size_t>(m)];
  return out;
}

MetricSymbol MetricSymbol::reflected() const {
  MetricSymbol out(R_, M_);
  for (int m = 0; m < M_; ++m) out.samples_[static_cast<size_t>(m)] = samples_[static_cast<size_t>((M_ - m) % M_)];
  return out;
}

MetricSymbol MetricSymbol::theta_derivative() const {
  MetricSymbol out(R_, M_);
  std::vector<cplx> line(static_cast<size_t>(M_));
  for (int r = 0; r < R_; ++r) {
    for (int s = 0; s < R_; ++s) {
      for (int m = 0; m < M_; ++m) line[static_cast<size_t>(m)] = samples_[static_cast<size_t>(m)](r, s);
      std::vector<cplx> d = spectral_derivative(line);
      for (int m = 0; m < M_; ++m) out.samples_[static_cast<size_t>(m)](r, s) = d[static_cast<size_t>(m)];
    }
  }
  return out;
}

double max_sample_diff(const MetricSymbol& a, const MetricSymbol& b) {
  if (a.R() != b.R() || a.M() != b.M()) throw TruncationMismatch("symbol shapes differ");
  double worst = 0.0;
  for (int m = 0; m < a.M(); ++m) worst = std::max(worst, max_norm(a.sample(m) - b.sample(m)));
  return worst;
}

}  // namespace lgtt
