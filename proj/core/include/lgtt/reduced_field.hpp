#pragma once

#include <vector>

#include "lgtt/grid.hpp"
#include "lgtt/phase_field.hpp"
#include "lgtt/symbol.hpp"
#include "lgtt/toeplitz.hpp"
#include "lgtt/types.hpp"

namespace lgtt {

/* A metric symbol at every node of a coupling-plane grid, shared R and M. */
class SymbolField {
 public:
  SymbolField(const TGrid& grid, int R, int M);

  template <class F>  // f(t1, t2, theta) -> Matrix
  static SymbolField sample(const TGrid& grid, int R, int M, F&& f) {
    SymbolField out(grid, R, M);
    for (int i1 = 0; i1 < grid.n1; ++i1)
      for (int i2 = 0; i2 < grid.n2; ++i2) {
        const double t1 = grid.t1(i1);
        const double t2 = grid.t2(i2);
        out.set(i1, i2, MetricSymbol::from_function(R, M, [&](double theta) { return f(t1, t2, theta); }));
      }
    return out;
  }

  const TGrid& grid() const { return grid_; }
  int R() const { return R_; }
  int M() const { return M_; }

  const MetricSymbol& at(int i1, int i2) const { return nodes_[static_cast<size_t>(grid_.flat(i1, i2))]; }
  void set(int i1, int i2, MetricSymbol s);

 private:
  TGrid grid_;
  int R_;
  int M_;
  std::vector<MetricSymbol> nodes_;
};

/* Pointwise inverse at every node and sample. */
SymbolField field_pointwise_inverse(const SymbolField& f);

/*
 * Connection data of a symbol field: A_t = g wirt_d(g^{-1}) (differences in
 * the coupling plane) and A_theta = g d/dtheta(g^{-1}) (spectral), together
 * with the deformation constant B.  Components are always derived from the
 * stored field; the checking constructor cross-validates externally supplied
 * component fields against the derived ones and throws InconsistentConnection
 * when they disagree beyond the tolerance.
 */
class ReducedConnection {
 public:
  ReducedConnection(SymbolField gt, double B);
  ReducedConnection(SymbolField gt, double B, const SymbolField& a_t_given, const SymbolField& a_theta_given,
                    double consistency_tol = 1e-8);

  const SymbolField& field() const { return gt_; }
  const SymbolField& inverse_field() const { return inv_; }
  double B() const { return B_; }

  /* g wirt_d(g^{-1}) at one theta sample; needs a radius-1 stencil. */
  Matrix a_t(int i1, int i2, int m) const;
  /* Full theta line of A_theta at a node. */
  MetricSymbol a_theta(int i1, int i2) const;

 private:
  SymbolField gt_;
  SymbolField inv_;
  double B_;
};

/*
 * Left side of the deformed field equation at one interior node, one matrix
 * per theta sample:
 *
 *   wirt_dbar(A_t) + d/dtheta(A_theta) - B [K, A_theta] - B^2 [Sigma_3, K],
 *
 * with K = g (Sigma_3 g^{-1} - g^{-1} Sigma_3), which equals
 * g Sigma_3 g^{-1} - Sigma_3 but evaluates to the exact zero matrix on
 * diagonal fields.  B != 0 requires R = 2.  Needs a radius-2 stencil.
 */
std::vector<Matrix> field_equation_line(const ReducedConnection& conn, int i1, int i2);

/* Max-norm over theta of field_equation_line. */
double su11_field_residual(const ReducedConnection& conn, int i1, int i2);
RealGrid su11_field_map(const ReducedConnection& conn);

/*
 * Principal-chiral residual: the same divergence form with B = 0, evaluated
 * through the identical code path, so it agrees bitwise with
 * su11_field_residual at B = 0.
 */
double pcf_residual(const SymbolField& gt, int i1, int i2);
RealGrid pcf_map(const SymbolField& gt);

/* Gap between the deformed and principal-chiral expressions per gamma. */
struct BLimitRow {
  double gamma = 0.0;
  double b = 0.0;
  double gap = 0.0;
};
std::vector<BLimitRow> b_limit_consistency(const SymbolField& gt, int i1, int i2,
                                           const std::vector<double>& gammas);

/*
 * Two independent routes to the one-chain flatness residual for the symbol
 * family f = exp(i phi) / |t| built from a phase field:
 *
 *   matrix_residual: the truncated-operator curvature at the node, max-norm
 *     over interior entries |k|, |l| <= N/2;
 *   scalar_residual: max over theta of |sigma|, where
 *     sigma = wirt_dbar(f wirt_d f^{-1}) + d/dtheta(f d/dtheta f^{-1});
 *   gap: max over interior entries of |curvature[k][l] - sigma_{k-l}|,
 *     sigma_d taken from the same sample grid the operator route uses.
 */
struct TtstarOracle {
  double matrix_residual = 0.0;
  double scalar_residual = 0.0;
  double gap = 0.0;
};
TtstarOracle symbol_ttstar_oracle(const PhaseField& phi, int N, int i1, int i2);

}  // namespace lgtt
