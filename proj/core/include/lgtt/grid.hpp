#pragma once

#include <vector>

#include "lgtt/errors.hpp"
#include "lgtt/types.hpp"

namespace lgtt {

/*
 * Coupling-plane grid convention (the single definition site).
 *
 * Grids store coordinates (t1, t2) that are TWICE the physical coupling
 * components.  With that scaling, the plain central-difference combinations
 *
 *   wirt_d    = delta_1 - i delta_2
 *   wirt_dbar = delta_1 + i delta_2
 *
 * on stored coordinates equal the physical Wirtinger derivatives
 * (1/2)(d/dt1 -+ i d/dt2), so every downstream formula uses wirt_d and
 * wirt_dbar with no extra factor of 1/2, and the composition
 * wirt_dbar(wirt_d(f)) is the plain Laplacian d^2/dt1^2 + d^2/dt2^2 of the
 * stored grid.  All file formats and user-facing coordinates refer to the
 * stored values.
 */
struct TGrid {
  int n1 = 0;  // nodes along t1
  int n2 = 0;  // nodes along t2
  double h = 0.0;
  double t1_min = 0.0;
  double t2_min = 0.0;

  void validate() const;

  int size() const { return n1 * n2; }
  int flat(int i1, int i2) const { return i1 * n2 + i2; }
  double t1(int i1) const { return t1_min + h * i1; }
  double t2(int i2) const { return t2_min + h * i2; }
  cplx t(int i1, int i2) const { return cplx(t1(i1), t2(i2)); }

  bool contains(int i1, int i2) const { return i1 >= 0 && i1 < n1 && i2 >= 0 && i2 < n2; }
  bool interior(int i1, int i2, int margin = 1) const {
    return i1 >= margin && i1 < n1 - margin && i2 >= margin && i2 < n2 - margin;
  }
  /* Throws BoundaryNode unless a stencil of the given half-width fits. */
  void require_interior(int i1, int i2, int margin = 1) const;

  bool operator==(const TGrid&) const = default;
};

template <class T>
class GridData {
 public:
  GridData() = default;
  explicit GridData(const TGrid& grid) : grid_(grid), data_(static_cast<size_t>(grid.size())) {
    grid.validate();
  }

  template <class F>
  static GridData sample(const TGrid& grid, F&& f) {
    GridData d(grid);
    for (int i1 = 0; i1 < grid.n1; ++i1)
      for (int i2 = 0; i2 < grid.n2; ++i2) d.at(i1, i2) = f(i1, i2);
    return d;
  }

  const TGrid& grid() const { return grid_; }
  T& at(int i1, int i2) { return data_[static_cast<size_t>(grid_.flat(i1, i2))]; }
  const T& at(int i1, int i2) const { return data_[static_cast<size_t>(grid_.flat(i1, i2))]; }

 private:
  TGrid grid_;
  std::vector<T> data_;
};

using MatrixGrid = GridData<Matrix>;
using RealGrid = GridData<double>;

/* delta_1 f - i delta_2 f by central differences; see convention above. */
template <class T>
T wirt_d(const GridData<T>& f, int i1, int i2) {
  f.grid().require_interior(i1, i2, 1);
  const double inv2h = 1.0 / (2.0 * f.grid().h);
  T d1 = (f.at(i1 + 1, i2) - f.at(i1 - 1, i2)) * inv2h;
  T d2 = (f.at(i1, i2 + 1) - f.at(i1, i2 - 1)) * inv2h;
  return d1 - iu * d2;
}

/* delta_1 f + i delta_2 f by central differences; see convention above. */
template <class T>
T wirt_dbar(const GridData<T>& f, int i1, int i2) {
  f.grid().require_interior(i1, i2, 1);
  const double inv2h = 1.0 / (2.0 * f.grid().h);
  T d1 = (f.at(i1 + 1, i2) - f.at(i1 - 1, i2)) * inv2h;
  T d2 = (f.at(i1, i2 + 1) - f.at(i1, i2 - 1)) * inv2h;
  return d1 + iu * d2;
}

}  // namespace lgtt
