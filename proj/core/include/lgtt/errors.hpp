#pragma once

#include <stdexcept>
#include <string>

namespace lgtt {

/* Base class for every failure mode this library reports deliberately. */
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/* A critical point of the superpotential has multiplicity > 1. */
struct DegenerateCritical : Error {
  using Error::Error;
};

/* The derivative polynomial has no roots away from u = 0. */
struct NoCriticalPoints : Error {
  using Error::Error;
};

/* Two operands carry different truncation sizes or chain counts. */
struct TruncationMismatch : Error {
  using Error::Error;
};

/* The residue pairing is not invertible. */
struct SingularEta : Error {
  using Error::Error;
};

/* A finite-difference stencil would leave the grid. */
struct BoundaryNode : Error {
  using Error::Error;
};

/* The theta grid cannot resolve every Toeplitz diagonal (M < 4N + 2). */
struct AliasRisk : Error {
  using Error::Error;
};

/* A symbol sample is singular or too close to singular to invert. */
struct SingularSymbol : Error {
  using Error::Error;
};

/* Connection components do not derive from the stored field. */
struct InconsistentConnection : Error {
  using Error::Error;
};

/* Fewer than the minimum number of radial nodes fit in the annulus. */
struct AnnulusTooThin : Error {
  using Error::Error;
};

/* A radial profile expected to decay grows outward instead. */
struct NonDecaying : Error {
  using Error::Error;
};

}  // namespace lgtt
