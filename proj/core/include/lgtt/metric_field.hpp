#pragma once

#include "lgtt/grid.hpp"
#include "lgtt/ring.hpp"
#include "lgtt/types.hpp"

namespace lgtt {

inline constexpr double hermiticity_warn_threshold = 1e-12;

/*
 * Vacuum metric sampled over a coupling-plane grid: one Hermitian
 * positive-definite matrix per node plus the constant pairing eta.
 * Construction symmetrizes each sample, records the largest correction
 * applied, and rejects non-positive-definite samples.  The residual kernels
 * below also accept raw MatrixGrid data, since several verification paths
 * evaluate them on fields that are deliberately not Hermitian.
 */
class MetricField {
 public:
  MetricField(MatrixGrid samples, Matrix eta);

  const TGrid& grid() const { return samples_.grid(); }
  const MatrixGrid& samples() const { return samples_; }
  const Matrix& eta() const { return eta_; }
  int dim() const { return dim_; }

  double max_hermiticity_correction() const { return max_correction_; }
  bool hermiticity_warning() const { return max_correction_ > hermiticity_warn_threshold; }

 private:
  MatrixGrid samples_;
  Matrix eta_;
  int dim_ = 0;
  double max_correction_ = 0.0;
};

/*
 * Deviation from the reality constraint: max-norm of
 * eta^{-1} g (eta^{-1} g)^* - I, where * conjugates entrywise.
 */
double reality_residual(const Matrix& g, const Matrix& eta);
RealGrid reality_map(const MetricField& field);

/* Inverts every sample; throws SingularSymbol naming the first bad node. */
MatrixGrid pointwise_inverse(const MatrixGrid& g);

/* Connection matrix g wirt_d(g^{-1}) at a node (stencil radius 1). */
Matrix metric_connection(const MatrixGrid& g, const MatrixGrid& ginv, int i1, int i2);

/*
 * Flatness of the metric connection at an interior node:
 * wirt_dbar(g wirt_d g^{-1}) - [C, g C^+ g^{-1}].
 * Needs a stencil of radius 2; the scalar forms take the max-norm.
 */
Matrix zero_curvature_matrix(const MatrixGrid& g, const CouplingMatrix& C, int i1, int i2);
double zero_curvature_residual(const MatrixGrid& g, const CouplingMatrix& C, int i1, int i2);
double zero_curvature_residual(const MetricField& field, const CouplingMatrix& C, int i1, int i2);
/* Whole-grid map; nodes without a full stencil hold NaN. */
RealGrid zero_curvature_map(const MetricField& field, const CouplingMatrix& C);

/*
 * The companion flatness condition pairs two couplings antisymmetrically:
 * d_i C_j - d_j C_i + [g d_i g^{-1}, C_j] - [g d_j g^{-1}, C_i].  With the
 * single coupling t both slots coincide, every term cancels against its
 * mirror, and the result is exact floating-point zero; the evaluation below
 * still computes each mirror pair through the shared code path rather than
 * returning a constant.
 */
double second_zero_curvature_residual(const MatrixGrid& g, const CouplingMatrix& C, int i1, int i2);

}  // namespace lgtt
