#include "lgtt/grid.hpp"

#include <sstream>
#include <stdexcept>

namespace lgtt {

void TGrid::validate() const {
  if (n1 < 1 || n2 < 1) throw std::invalid_argument("grid needs at least one node per axis");
  if (!(h > 0.0)) throw std::invalid_argument("grid spacing must be positive");
}

void TGrid::require_interior(int i1, int i2, int margin) const {
  if (!contains(i1, i2)) {
    std::ostringstream os;
    os << "node (" << i1 << ", " << i2 << ") outside grid " << n1 << " x " << n2;
    throw BoundaryNode(os.str());
  }
  if (!interior(i1, i2, margin)) {
    std::ostringstream os;
    os << "node (" << i1 << ", " << i2 << ") too close to the boundary for a radius-" << margin
       << " stencil on grid " << n1 << " x " << n2;
    throw BoundaryNode(os.str());
  }
}

}  // namespace lgtt
