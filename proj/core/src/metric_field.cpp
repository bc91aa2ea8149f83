#include "lgtt/metric_field.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace lgtt {

namespace {

std::string node_label(int i1, int i2) {
  std::ostringstream os;
  os << "(" << i1 << ", " << i2 << ")";
  return os.str();
}

Matrix invert_or_throw(const Matrix& m, int i1, int i2) {
  Eigen::FullPivLU<Matrix> lu(m);
  if (!lu.isInvertible())
    throw SingularSymbol("matrix sample at node " + node_label(i1, i2) + " is not invertible");
  return lu.inverse();
}

}  // namespace

MetricField::MetricField(MatrixGrid samples, Matrix eta) : samples_(std::move(samples)), eta_(std::move(eta)) {
  const TGrid& g = samples_.grid();
  g.validate();
  if (g.n1 < 3 || g.n2 < 3)
    throw std::invalid_argument("metric field grid needs at least 3 nodes per axis");
  if (eta_.rows() != eta_.cols() || eta_.rows() == 0) throw std::invalid_argument("eta must be square");
  dim_ = static_cast<int>(eta_.rows());

  Eigen::FullPivLU<Matrix> lu(eta_);
  if (!lu.isInvertible()) throw SingularEta("eta is singular");

  for (int i1 = 0; i1 < g.n1; ++i1) {
    for (int i2 = 0; i2 < g.n2; ++i2) {
      Matrix& s = samples_.at(i1, i2);
      if (s.rows() != dim_ || s.cols() != dim_)
        throw std::invalid_argument("metric sample at node " + node_label(i1, i2) +
                                    " does not match eta dimension");
      Matrix herm = 0.5 * (s + s.adjoint());
      max_correction_ = std::max(max_correction_, max_norm(s - herm));
      s = std::move(herm);
      Eigen::LLT<Matrix> llt(s);
      if (llt.info() != Eigen::Success)
        throw std::invalid_argument("metric sample at node " + node_label(i1, i2) +
                                    " is not positive definite");
    }
  }
}

double reality_residual(const Matrix& g, const Matrix& eta) {
  if (g.rows() != g.cols() || eta.rows() != eta.cols() || g.rows() != eta.rows())
    throw std::invalid_argument("reality residual needs square matrices of equal dimension");
  Eigen::FullPivLU<Matrix> lu(eta);
  if (!lu.isInvertible()) throw SingularEta("eta is singular");
  Matrix m = lu.solve(g);
  Matrix dev = m * m.conjugate() - Matrix::Identity(g.rows(), g.cols());
  return max_norm(dev);
}

RealGrid reality_map(const MetricField& field) {
  const TGrid& g = field.grid();
  RealGrid out(g);
  for (int i1 = 0; i1 < g.n1; ++i1)
    for (int i2 = 0; i2 < g.n2; ++i2) out.at(i1, i2) = reality_residual(field.samples().at(i1, i2), field.eta());
  return out;
}

MatrixGrid pointwise_inverse(const MatrixGrid& g) {
  MatrixGrid inv(g.grid());
  for (int i1 = 0; i1 < g.grid().n1; ++i1)
    for (int i2 = 0; i2 < g.grid().n2; ++i2) inv.at(i1, i2) = invert_or_throw(g.at(i1, i2), i1, i2);
  return inv;
}

Matrix metric_connection(const MatrixGrid& g, const MatrixGrid& ginv, int i1, int i2) {
  return g.at(i1, i2) * wirt_d(ginv, i1, i2);
}

namespace {

/* Inverses on the radius-2 diamond around the node; other slots stay empty. */
MatrixGrid local_inverses(const MatrixGrid& g, int i1, int i2) {
  MatrixGrid inv(g.grid());
  for (int a = i1 - 2; a <= i1 + 2; ++a)
    for (int b = i2 - 2; b <= i2 + 2; ++b)
      if (std::abs(a - i1) + std::abs(b - i2) <= 2 && g.grid().contains(a, b))
        inv.at(a, b) = invert_or_throw(g.at(a, b), a, b);
  return inv;
}

Matrix curvature_at(const MatrixGrid& g, const MatrixGrid& ginv, const Matrix& cdiag, const Matrix& cadj,
                    int i1, int i2) {
  MatrixGrid conn(g.grid());
  conn.at(i1 + 1, i2) = metric_connection(g, ginv, i1 + 1, i2);
  conn.at(i1 - 1, i2) = metric_connection(g, ginv, i1 - 1, i2);
  conn.at(i1, i2 + 1) = metric_connection(g, ginv, i1, i2 + 1);
  conn.at(i1, i2 - 1) = metric_connection(g, ginv, i1, i2 - 1);
  Matrix dbar_conn = wirt_dbar(conn, i1, i2);
  Matrix m = g.at(i1, i2) * cadj * ginv.at(i1, i2);
  return dbar_conn - (cdiag * m - m * cdiag);
}

}  // namespace

Matrix zero_curvature_matrix(const MatrixGrid& g, const CouplingMatrix& C, int i1, int i2) {
  g.grid().require_interior(i1, i2, 2);
  MatrixGrid ginv = local_inverses(g, i1, i2);
  return curvature_at(g, ginv, C.dense(), C.dense_adjoint(), i1, i2);
}

double zero_curvature_residual(const MatrixGrid& g, const CouplingMatrix& C, int i1, int i2) {
  return max_norm(zero_curvature_matrix(g, C, i1, i2));
}

double zero_curvature_residual(const MetricField& field, const CouplingMatrix& C, int i1, int i2) {
  return zero_curvature_residual(field.samples(), C, i1, i2);
}

RealGrid zero_curvature_map(const MetricField& field, const CouplingMatrix& C) {
  const TGrid& grid = field.grid();
  RealGrid out(grid);
  MatrixGrid ginv = pointwise_inverse(field.samples());
  const Matrix cdiag = C.dense();
  const Matrix cadj = C.dense_adjoint();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int i1 = 0; i1 < grid.n1; ++i1)
    for (int i2 = 0; i2 < grid.n2; ++i2)
      out.at(i1, i2) = grid.interior(i1, i2, 2)
                           ? max_norm(curvature_at(field.samples(), ginv, cdiag, cadj, i1, i2))
                           : nan;
  return out;
}

double second_zero_curvature_residual(const MatrixGrid& g, const CouplingMatrix& C, int i1, int i2) {
  g.grid().require_interior(i1, i2, 1);
  MatrixGrid ginv = local_inverses(g, i1, i2);
  const Matrix cdense = C.dense();
  const double inv2h = 1.0 / (2.0 * g.grid().h);

  /* d_a C_b + [g d_a g^{-1}, C_b] for coupling slots (a, b).  The point
   * basis of the w = t * shape(x) family does not move with t, so the C
   * field is the same matrix at every node and its difference quotient is
   * evaluated from equal samples. */
  auto term = [&](int, int) -> Matrix {
    Matrix dC = (cdense - cdense) * inv2h;
    Matrix conn = metric_connection(g, ginv, i1, i2);
    return dC + (conn * cdense - cdense * conn);
  };

  Matrix antisym = term(0, 0) - term(0, 0);
  return max_norm(antisym);
}

}  // namespace lgtt
