#include "lgtt/toeplitz.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "lgtt/ring.hpp"

namespace lgtt {

ToeplitzTruncation toeplitz_truncate(const MetricSymbol& s, int N) {
  if (N < 0) throw std::invalid_argument("truncation must be >= 0");
  ToeplitzTruncation T;
  T.N = N;
  T.R = s.R();
  const std::vector<Matrix> coef = s.coefficients(2 * N);
  T.dense = Matrix::Zero(T.dim(), T.dim());
  for (int r = 0; r < T.R; ++r)
    for (int c = 0; c < T.R; ++c)
      for (int k = -N; k <= N; ++k)
        for (int l = -N; l <= N; ++l)
          T.dense(T.index(r, k), T.index(c, l)) = coef[static_cast<size_t>(k - l + 2 * N)](r, c);
  return T;
}

namespace {

Matrix sigma3_blocks(int N, int R) {
  const int bd = 2 * N + 1;
  Matrix s = Matrix::Zero(R * bd, R * bd);
  for (int r = 0; r < R; ++r)
    for (int k = 0; k < bd; ++k) s(r * bd + k, r * bd + k) = cplx(r == 0 ? 1.0 : -1.0, 0.0);
  return s;
}

double interior_max_diff(const Matrix& a, const Matrix& b, int N, int R) {
  const int half = N / 2;
  const int bd = 2 * N + 1;
  double worst = 0.0;
  for (int r = 0; r < R; ++r)
    for (int c = 0; c < R; ++c)
      for (int k = -half; k <= half; ++k)
        for (int l = -half; l <= half; ++l) {
          const int row = r * bd + k + N;
          const int col = c * bd + l + N;
          worst = std::max(worst, std::abs(a(row, col) - b(row, col)));
        }
  return worst;
}

}  // namespace

ToeplitzTruncation fourier_expand(const MetricSymbol& s, int N) {
  if (s.M() < 4 * N + 2) {
    std::ostringstream os;
    os << "grid of " << s.M() << " samples cannot resolve all diagonals at truncation " << N
       << " (need M >= " << 4 * N + 2 << ")";
    throw AliasRisk(os.str());
  }
  return toeplitz_truncate(s, N);
}

MetricSymbol fourier_reduce(const ToeplitzTruncation& T, int M) {
  const int need = 4 * T.N + 2;
  if (M == 0) {
    M = 2;
    while (M < need) M *= 2;
  }
  if (M < need) {
    std::ostringstream os;
    os << "synthesis grid of " << M << " samples cannot hold all diagonals at truncation " << T.N
       << " (need M >= " << need << ")";
    throw AliasRisk(os.str());
  }
  const int bd = T.block_dim();
  std::vector<std::pair<int, Matrix>> coeffs;
  coeffs.reserve(static_cast<size_t>(4 * T.N + 1));
  for (int d = -2 * T.N; d <= 2 * T.N; ++d) {
    Matrix f = Matrix::Zero(T.R, T.R);
    for (int r = 0; r < T.R; ++r) {
      for (int c = 0; c < T.R; ++c) {
        cplx acc(0.0, 0.0);
        int count = 0;
        for (int k = -T.N; k <= T.N; ++k) {
          const int l = k - d;
          if (l < -T.N || l > T.N) continue;
          acc += T.dense(r * bd + k + T.N, c * bd + l + T.N);
          ++count;
        }
        f(r, c) = acc / static_cast<double>(count);
      }
    }
    coeffs.emplace_back(d, std::move(f));
  }
  return MetricSymbol::from_coefficients(T.R, M, coeffs);
}

double invariance_check(const Matrix& g, int R) {
  if (g.rows() != g.cols()) throw std::invalid_argument("invariance check needs a square matrix");
  if (R < 1 || g.rows() % R != 0) throw std::invalid_argument("matrix dimension not divisible by chain count");
  const int bd = static_cast<int>(g.rows()) / R;
  double worst = 0.0;
  for (int r = 0; r < R; ++r)
    for (int c = 0; c < R; ++c)
      for (int k = 0; k + 1 < bd; ++k)
        for (int l = 0; l + 1 < bd; ++l)
          worst = std::max(worst, std::abs(g(r * bd + k, c * bd + l) - g(r * bd + k + 1, c * bd + l + 1)));
  return worst;
}

double commutator_identity_residual(const MetricSymbol& s, int N, double gamma) {
  if (N < 1) throw std::invalid_argument("truncation must be >= 1");
  if (s.R() == 2 && !(gamma > 0.0))
    throw std::invalid_argument("two-chain commutator identity needs gamma > 0");

  const MetricSymbol sinv = s.pointwise_inverse();
  const MetricSymbol sder = s.theta_derivative();
  MetricSymbol dinv(s.R(), s.M());
  for (int m = 0; m < s.M(); ++m)
    dinv.set_sample(m, -(sinv.sample(m) * sder.sample(m) * sinv.sample(m)));

  const Matrix T = toeplitz_truncate(sinv, N).dense;
  const Matrix Tder = toeplitz_truncate(dinv, N).dense;

  Matrix lhs, rhs;
  if (s.R() == 1) {
    const CouplingMatrix C = coupling_matrix(find_critical_chains(ExpPolynomial::model_a(cplx(1.0, 0.0)), N));
    const Matrix cd = C.dense_adjoint();
    lhs = cd * T - T * cd;
    rhs = Tder;
  } else {
    const CouplingMatrix C =
        coupling_matrix(find_critical_chains(ExpPolynomial::model_b(cplx(1.0, 0.0), std::cosh(gamma)), N));
    const Matrix cd = C.dense();
    const Matrix s3 = sigma3_blocks(N, 2);
    lhs = cd * T - T * cd;
    rhs = Tder + b_constant(gamma) * (s3 * T - T * s3);
  }
  return interior_max_diff(lhs, rhs, N, s.R());
}

double symbol_reality_residual(const MetricSymbol& s, cplx t, double gamma) {
  if (std::abs(t) == 0.0) throw std::invalid_argument("coupling t must be nonzero");
  if (s.R() == 1) {
    const double t2 = std::norm(t);
    double worst = 0.0;
    for (int m = 0; m < s.M(); ++m)
      worst = std::max(worst, std::abs(t2 * std::norm(s.sample(m)(0, 0)) - 1.0));
    return worst;
  }
  if (!(gamma > 0.0)) throw std::invalid_argument("two-chain reality constraint needs gamma > 0");
  /* eta0^{-1} = -2 t sinh(gamma) Sigma_3. */
  const Matrix eta0_inv = (-2.0 * t * std::sinh(gamma)) * sigma3();
  const Matrix id = Matrix::Identity(2, 2);
  double worst = 0.0;
  for (int m = 0; m < s.M(); ++m) {
    const Matrix here = eta0_inv * s.sample(m);
    const Matrix mirrored = eta0_inv * s.sample((s.M() - m) % s.M());
    worst = std::max(worst, max_norm(here * mirrored.conjugate() - id));
  }
  return worst;
}

MetricSymbol rescale_D(const MetricSymbol& g, double gamma) {
  if (g.R() != 2) throw std::invalid_argument("D-rescaling is defined for two chains");
  Matrix dinv = Matrix::Zero(2, 2);
  dinv(0, 0) = std::exp(cplx(-0.5 * gamma, 0.0));
  dinv(1, 1) = std::exp(cplx(0.5 * gamma, 0.0));
  MetricSymbol out(2, g.M());
  for (int m = 0; m < g.M(); ++m) out.set_sample(m, dinv * g.sample(m) * dinv);
  return out;
}

MetricSymbol rescale_D_inverse(const MetricSymbol& gt, double gamma) { return rescale_D(gt, -gamma); }

double su11_residual(const MetricSymbol& gt, double scale) {
  if (gt.R() != 2) throw std::invalid_argument("SU(1,1) residual is defined for two chains");
  if (scale == 0.0) throw std::invalid_argument("normalization scale must be nonzero");
  const Matrix s3 = sigma3();
  double worst = 0.0;
  for (int m = 0; m < gt.M(); ++m) {
    const Matrix u = gt.sample(m) / scale;
    Eigen::FullPivLU<Matrix> lu(u);
    if (!lu.isInvertible()) {
      std::ostringstream os;
      os << "sample " << m << " of " << gt.M() << " is singular, not a group element candidate";
      throw SingularSymbol(os.str());
    }
    const double metric_dev = max_norm(u.adjoint() * s3 * u - s3);
    const double det_dev = std::abs(u.determinant() - cplx(1.0, 0.0));
    worst = std::max(worst, std::max(metric_dev, det_dev));
  }
  return worst;
}

}  // namespace lgtt
