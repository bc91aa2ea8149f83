#pragma once

#include <complex>

#include <Eigen/Dense>

namespace lgtt {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double pi_const = 3.1415926535897932384626433832795;
inline constexpr double two_pi = 6.283185307179586476925286766559;
inline constexpr cplx iu{0.0, 1.0};

/* Largest entry magnitude; the norm used by every residual in this library. */
inline double max_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

/* Pauli-type signature matrix diag(1, -1) used by the two-chain reduction. */
inline Matrix sigma3() {
  Matrix s = Matrix::Zero(2, 2);
  s(0, 0) = cplx(1.0, 0.0);
  s(1, 1) = cplx(-1.0, 0.0);
  return s;
}

}  // namespace lgtt
