#include "lgtt/reduced_field.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "lgtt/fft.hpp"
#include "lgtt/metric_field.hpp"
#include "lgtt/ring.hpp"

namespace lgtt {

SymbolField::SymbolField(const TGrid& grid, int R, int M) : grid_(grid), R_(R), M_(M) {
  grid.validate();
  nodes_.assign(static_cast<size_t>(grid.size()), MetricSymbol(R, M));
}

void SymbolField::set(int i1, int i2, MetricSymbol s) {
  if (s.R() != R_ || s.M() != M_) throw TruncationMismatch("symbol does not match field shape");
  if (!grid_.contains(i1, i2)) throw std::out_of_range("symbol field node out of range");
  nodes_[static_cast<size_t>(grid_.flat(i1, i2))] = std::move(s);
}

SymbolField field_pointwise_inverse(const SymbolField& f) {
  SymbolField out(f.grid(), f.R(), f.M());
  for (int i1 = 0; i1 < f.grid().n1; ++i1)
    for (int i2 = 0; i2 < f.grid().n2; ++i2) out.set(i1, i2, f.at(i1, i2).pointwise_inverse());
  return out;
}

ReducedConnection::ReducedConnection(SymbolField gt, double B)
    : gt_(std::move(gt)), inv_(field_pointwise_inverse(gt_)), B_(B) {
  if (B_ != 0.0 && gt_.R() != 2)
    throw std::invalid_argument("nonzero deformation constant needs a two-chain field");
}

ReducedConnection::ReducedConnection(SymbolField gt, double B, const SymbolField& a_t_given,
                                     const SymbolField& a_theta_given, double consistency_tol)
    : ReducedConnection(std::move(gt), B) {
  const TGrid& g = gt_.grid();
  if (a_t_given.grid() != g || a_theta_given.grid() != g || a_t_given.R() != gt_.R() ||
      a_theta_given.R() != gt_.R() || a_t_given.M() != gt_.M() || a_theta_given.M() != gt_.M())
    throw TruncationMismatch("connection component fields do not match the metric field shape");
  double worst = 0.0;
  for (int i1 = 0; i1 < g.n1; ++i1) {
    for (int i2 = 0; i2 < g.n2; ++i2) {
      const MetricSymbol ath = a_theta(i1, i2);
      for (int m = 0; m < gt_.M(); ++m)
        worst = std::max(worst, max_norm(a_theta_given.at(i1, i2).sample(m) - ath.sample(m)));
      if (!g.interior(i1, i2, 1)) continue;
      for (int m = 0; m < gt_.M(); ++m)
        worst = std::max(worst, max_norm(a_t_given.at(i1, i2).sample(m) - a_t(i1, i2, m)));
    }
  }
  if (worst > consistency_tol) {
    std::ostringstream os;
    os << "supplied connection components deviate from the field by " << worst << " (tolerance "
       << consistency_tol << ")";
    throw InconsistentConnection(os.str());
  }
}

Matrix ReducedConnection::a_t(int i1, int i2, int m) const {
  const TGrid& g = gt_.grid();
  g.require_interior(i1, i2, 1);
  const double inv2h = 1.0 / (2.0 * g.h);
  Matrix d1 = (inv_.at(i1 + 1, i2).sample(m) - inv_.at(i1 - 1, i2).sample(m)) * inv2h;
  Matrix d2 = (inv_.at(i1, i2 + 1).sample(m) - inv_.at(i1, i2 - 1).sample(m)) * inv2h;
  return gt_.at(i1, i2).sample(m) * (d1 - iu * d2);
}

MetricSymbol ReducedConnection::a_theta(int i1, int i2) const {
  const MetricSymbol dinv = inv_.at(i1, i2).theta_derivative();
  MetricSymbol out(gt_.R(), gt_.M());
  for (int m = 0; m < gt_.M(); ++m) out.set_sample(m, gt_.at(i1, i2).sample(m) * dinv.sample(m));
  return out;
}

std::vector<Matrix> field_equation_line(const ReducedConnection& conn, int i1, int i2) {
  const SymbolField& gt = conn.field();
  const SymbolField& inv = conn.inverse_field();
  const TGrid& g = gt.grid();
  g.require_interior(i1, i2, 2);
  const int M = gt.M();
  const double inv2h = 1.0 / (2.0 * g.h);
  const double B = conn.B();

  const MetricSymbol datheta = conn.a_theta(i1, i2).theta_derivative();
  const MetricSymbol dinv_theta = inv.at(i1, i2).theta_derivative();
  const Matrix s3 = sigma3();

  std::vector<Matrix> out(static_cast<size_t>(M));
  for (int m = 0; m < M; ++m) {
    const Matrix d1 = (conn.a_t(i1 + 1, i2, m) - conn.a_t(i1 - 1, i2, m)) * inv2h;
    const Matrix d2 = (conn.a_t(i1, i2 + 1, m) - conn.a_t(i1, i2 - 1, m)) * inv2h;
    Matrix total = (d1 + iu * d2) + datheta.sample(m);
    if (gt.R() == 2) {
      const Matrix& gm = gt.at(i1, i2).sample(m);
      const Matrix& gim = inv.at(i1, i2).sample(m);
      /* K = g Sigma_3 g^{-1} - Sigma_3, in a form that is the exact zero
       * matrix whenever g commutes with Sigma_3. */
      const Matrix K = gm * (s3 * gim - gim * s3);
      const Matrix atheta_m = gm * dinv_theta.sample(m);
      total -= B * (K * atheta_m - atheta_m * K);
      total -= (B * B) * (s3 * K - K * s3);
    }
    out[static_cast<size_t>(m)] = total;
  }
  return out;
}

double su11_field_residual(const ReducedConnection& conn, int i1, int i2) {
  double worst = 0.0;
  for (const Matrix& v : field_equation_line(conn, i1, i2)) worst = std::max(worst, max_norm(v));
  return worst;
}

RealGrid su11_field_map(const ReducedConnection& conn) {
  const TGrid& g = conn.field().grid();
  RealGrid out(g);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int i1 = 0; i1 < g.n1; ++i1)
    for (int i2 = 0; i2 < g.n2; ++i2)
      out.at(i1, i2) = g.interior(i1, i2, 2) ? su11_field_residual(conn, i1, i2) : nan;
  return out;
}

double pcf_residual(const SymbolField& gt, int i1, int i2) {
  return su11_field_residual(ReducedConnection(gt, 0.0), i1, i2);
}

RealGrid pcf_map(const SymbolField& gt) { return su11_field_map(ReducedConnection(gt, 0.0)); }

std::vector<BLimitRow> b_limit_consistency(const SymbolField& gt, int i1, int i2,
                                           const std::vector<double>& gammas) {
  const std::vector<Matrix> base = field_equation_line(ReducedConnection(gt, 0.0), i1, i2);
  std::vector<BLimitRow> rows;
  rows.reserve(gammas.size());
  for (double gamma : gammas) {
    BLimitRow row;
    row.gamma = gamma;
    row.b = b_constant(gamma);
    const std::vector<Matrix> deformed = field_equation_line(ReducedConnection(gt, row.b), i1, i2);
    double gap = 0.0;
    for (size_t m = 0; m < base.size(); ++m) gap = std::max(gap, max_norm(deformed[m] - base[m]));
    row.gap = gap;
    rows.push_back(row);
  }
  return rows;
}

namespace {

cplx phase_symbol_value(const PhaseField& phi, int i1, int i2, int m) {
  const double at = std::abs(phi.grid().t(i1, i2));
  if (at == 0.0) throw SingularSymbol("phase symbol undefined at t = 0");
  return std::exp(iu * phi.at(i1, i2, m)) / at;
}

bool in_diamond(int a, int b, int i1, int i2, int radius) {
  return std::abs(a - i1) + std::abs(b - i2) <= radius;
}

}  // namespace

TtstarOracle symbol_ttstar_oracle(const PhaseField& phi, int N, int i1, int i2) {
  const TGrid& g = phi.grid();
  g.require_interior(i1, i2, 2);
  if (N < 1) throw std::invalid_argument("truncation must be >= 1");
  const int M = phi.M();

  /* Operator route: truncated Toeplitz field over the stencil diamond. */
  MatrixGrid tfield(g);
  for (int a = i1 - 2; a <= i1 + 2; ++a) {
    for (int b = i2 - 2; b <= i2 + 2; ++b) {
      if (!in_diamond(a, b, i1, i2, 2) || !g.contains(a, b)) continue;
      MetricSymbol f(1, M);
      for (int m = 0; m < M; ++m) {
        Matrix v(1, 1);
        v(0, 0) = phase_symbol_value(phi, a, b, m);
        f.set_sample(m, std::move(v));
      }
      tfield.at(a, b) = toeplitz_truncate(f, N).dense;
    }
  }
  const CouplingMatrix C = coupling_matrix(find_critical_chains(ExpPolynomial::model_a(cplx(1.0, 0.0)), N));
  const Matrix curv = zero_curvature_matrix(tfield, C, i1, i2);

  /* Scalar route: the same stencil evaluated through plain calculus. */
  std::vector<cplx> sigma(static_cast<size_t>(M), cplx(0.0, 0.0));
  for (int m = 0; m < M; ++m) {
    GridData<cplx> fv(g);
    GridData<cplx> finv(g);
    for (int a = i1 - 2; a <= i1 + 2; ++a)
      for (int b = i2 - 2; b <= i2 + 2; ++b)
        if (in_diamond(a, b, i1, i2, 2) && g.contains(a, b)) {
          const cplx v = phase_symbol_value(phi, a, b, m);
          fv.at(a, b) = v;
          finv.at(a, b) = cplx(1.0, 0.0) / v;
        }
    GridData<cplx> conn(g);
    conn.at(i1 + 1, i2) = fv.at(i1 + 1, i2) * wirt_d(finv, i1 + 1, i2);
    conn.at(i1 - 1, i2) = fv.at(i1 - 1, i2) * wirt_d(finv, i1 - 1, i2);
    conn.at(i1, i2 + 1) = fv.at(i1, i2 + 1) * wirt_d(finv, i1, i2 + 1);
    conn.at(i1, i2 - 1) = fv.at(i1, i2 - 1) * wirt_d(finv, i1, i2 - 1);
    sigma[static_cast<size_t>(m)] = wirt_dbar(conn, i1, i2);
  }
  std::vector<cplx> fline(static_cast<size_t>(M));
  std::vector<cplx> finv_line(static_cast<size_t>(M));
  for (size_t m = 0; m < fline.size(); ++m) {
    fline[m] = phase_symbol_value(phi, i1, i2, static_cast<int>(m));
    finv_line[m] = cplx(1.0, 0.0) / fline[m];
  }
  const std::vector<cplx> dfinv = spectral_derivative(finv_line);
  std::vector<cplx> prod(static_cast<size_t>(M));
  for (size_t m = 0; m < prod.size(); ++m) prod[m] = fline[m] * dfinv[m];
  const std::vector<cplx> sigma2 = spectral_derivative(prod);
  for (size_t m = 0; m < sigma.size(); ++m) sigma[m] += sigma2[m];

  const std::vector<cplx> sigma_coef = fft_forward(sigma);

  TtstarOracle out;
  for (const cplx& v : sigma) out.scalar_residual = std::max(out.scalar_residual, std::abs(v));
  const int half = N / 2;
  for (int k = -half; k <= half; ++k) {
    for (int l = -half; l <= half; ++l) {
      const cplx mat = curv(k + N, l + N);
      const cplx sc = sigma_coef[static_cast<size_t>(bin_of_freq(k - l, M))];
      out.matrix_residual = std::max(out.matrix_residual, std::abs(mat));
      out.gap = std::max(out.gap, std::abs(mat - sc));
    }
  }
  return out;
}

}  // namespace lgtt
