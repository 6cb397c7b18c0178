#include "zkrdtm/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace zkrdtm {

Grid Grid::square(double lo, double hi, double h) {
  if (!(hi > lo) || !(h > 0.0)) throw std::invalid_argument("Grid::square: need hi > lo and h > 0");
  const double cells = (hi - lo) / h;
  const double rounded = std::round(cells);
  if (std::abs(cells - rounded) > 1e-9 * rounded) {
    throw std::invalid_argument("Grid::square: spacing does not divide the extent");
  }
  const int n = static_cast<int>(rounded) + 1;
  Grid g{lo, lo, h, h, n, n};
  g.validate();
  return g;
}

void Grid::validate() const {
  if (!(dx > 0.0) || !(dy > 0.0)) throw std::invalid_argument("Grid: spacings must be positive");
  if (nx < 1 || ny < 1) throw std::invalid_argument("Grid: node counts must be positive");
  if (!std::isfinite(x0) || !std::isfinite(y0)) throw std::invalid_argument("Grid: origin must be finite");
}

}  // namespace zkrdtm
