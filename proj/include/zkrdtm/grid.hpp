#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include <boost/multiprecision/float128.hpp>

#include "zkrdtm/errors.hpp"
#include "zkrdtm/field_algebra.hpp"
#include "zkrdtm/rational.hpp"
#include "zkrdtm/stencil.hpp"

namespace zkrdtm {

/// IEEE binary128, used where binary64 roundoff would swamp the
/// truncation error of stacked high-order stencils.
using quad = boost::multiprecision::float128;

/// Uniform node lattice x_i = x0 + i·dx, y_j = y0 + j·dy.
struct Grid {
  double x0 = 0.0;
  double y0 = 0.0;
  double dx = 1.0;
  double dy = 1.0;
  int nx = 1;
  int ny = 1;

  /// Square grid covering [lo, hi]² with spacing h (h must divide the extent).
  static Grid square(double lo, double hi, double h);
  void validate() const;

  friend bool operator==(const Grid&, const Grid&) = default;
};

enum class SampleMode { node, bilinear };

template <typename Real>
struct GridSample {
  Real value;
  SampleMode mode;
};

/// Field sampled on a Grid.
///
/// Each derivative application invalidates a boundary layer as wide as the
/// stencil radius along the differentiated axis; margin_x/margin_y count
/// those layers. Pointwise operations keep the larger margin of their
/// operands. Reads outside the trimmed interior throw OutOfRegion.
template <typename Real>
class GridField {
 public:
  static constexpr const char* backend_tag = "grid";

  GridField(Grid grid, int accuracy_order = 8)
      : grid_(grid), accuracy_(accuracy_order),
        values_(static_cast<std::size_t>(grid.nx) * static_cast<std::size_t>(grid.ny), Real(0)) {
    grid_.validate();
    (void)stencil_radius(1, accuracy_);
  }

  template <typename Fn>
  static GridField from_function(const Grid& grid, Fn&& f, int accuracy_order = 8) {
    GridField out(grid, accuracy_order);
    for (int i = 0; i < grid.nx; ++i) {
      const Real x = out.node_x(i);
      for (int j = 0; j < grid.ny; ++j) out.at(i, j) = static_cast<Real>(f(x, out.node_y(j)));
    }
    return out;
  }

  [[nodiscard]] const Grid& grid() const { return grid_; }
  [[nodiscard]] int accuracy_order() const { return accuracy_; }
  [[nodiscard]] int margin_x() const { return margin_x_; }
  [[nodiscard]] int margin_y() const { return margin_y_; }
  [[nodiscard]] int margin() const { return std::max(margin_x_, margin_y_); }

  [[nodiscard]] Real node_x(int i) const { return Real(grid_.x0) + Real(i) * Real(grid_.dx); }
  [[nodiscard]] Real node_y(int j) const { return Real(grid_.y0) + Real(j) * Real(grid_.dy); }

  [[nodiscard]] bool interior_node(int i, int j) const {
    return i >= margin_x_ && i < grid_.nx - margin_x_ && j >= margin_y_ && j < grid_.ny - margin_y_;
  }

  [[nodiscard]] const Real& at(int i, int j) const { return values_[index(i, j)]; }
  Real& at(int i, int j) { return values_[index(i, j)]; }

  GridField& operator+=(const GridField& o) { return combine(o, [](Real& a, const Real& b) { a += b; }); }
  GridField& operator-=(const GridField& o) { return combine(o, [](Real& a, const Real& b) { a -= b; }); }
  GridField& operator*=(const GridField& o) { return combine(o, [](Real& a, const Real& b) { a *= b; }); }
  friend GridField operator+(GridField a, const GridField& b) { return a += b; }
  friend GridField operator-(GridField a, const GridField& b) { return a -= b; }
  friend GridField operator*(GridField a, const GridField& b) { return a *= b; }

  [[nodiscard]] GridField scaled(const Rational& factor) const {
    GridField out = *this;
    const Real f = factor.to<Real>();
    for (auto& v : out.values_) v *= f;
    return out;
  }

  [[nodiscard]] GridField zero_like() const { return GridField(grid_, accuracy_); }

  /// Applies the centered stencil of the given order along one axis.
  [[nodiscard]] GridField diff(Axis axis, int order) const {
    if (order == 0) return *this;
    const std::vector<Rational> exact = stencil_coefficients(order, accuracy_);
    const int r = stencil_radius(order, accuracy_);
    const double h = axis == Axis::x ? grid_.dx : grid_.dy;
    Real scale(1);
    for (int p = 0; p < order; ++p) scale *= Real(h);
    std::vector<Real> w;
    w.reserve(exact.size());
    for (const auto& c : exact) w.push_back(c.to<Real>() / scale);

    GridField out(grid_, accuracy_);
    out.margin_x_ = margin_x_ + (axis == Axis::x ? r : 0);
    out.margin_y_ = margin_y_ + (axis == Axis::y ? r : 0);
    if (2 * out.margin_x_ >= grid_.nx || 2 * out.margin_y_ >= grid_.ny) {
      throw DomainExhausted("GridField::diff: valid interior exhausted (margins " + std::to_string(out.margin_x_) +
                            ", " + std::to_string(out.margin_y_) + " on " + std::to_string(grid_.nx) + "x" +
                            std::to_string(grid_.ny) + " nodes)");
    }
    for (int i = out.margin_x_; i < grid_.nx - out.margin_x_; ++i) {
      for (int j = out.margin_y_; j < grid_.ny - out.margin_y_; ++j) {
        Real acc(0);
        for (int o = -r; o <= r; ++o) {
          const Real& v = axis == Axis::x ? at(i + o, j) : at(i, j + o);
          acc += w[static_cast<std::size_t>(o + r)] * v;
        }
        out.at(i, j) = acc;
      }
    }
    return out;
  }

  /// Node value when (x, y) coincides with a node, else bilinear interpolation.
  [[nodiscard]] GridSample<Real> sample(double x, double y) const {
    const double fx = (x - grid_.x0) / grid_.dx;
    const double fy = (y - grid_.y0) / grid_.dy;
    const double ri = std::round(fx);
    const double rj = std::round(fy);
    constexpr double snap = 1e-9;
    if (std::abs(fx - ri) <= snap && std::abs(fy - rj) <= snap) {
      const int i = static_cast<int>(ri);
      const int j = static_cast<int>(rj);
      require_interior(i, j, i, j, x, y);
      return {at(i, j), SampleMode::node};
    }
    const int i0 = static_cast<int>(std::floor(fx));
    const int j0 = static_cast<int>(std::floor(fy));
    require_interior(i0, j0, i0 + 1, j0 + 1, x, y);
    const Real tx = Real(fx - i0);
    const Real ty = Real(fy - j0);
    const Real v = (Real(1) - tx) * (Real(1) - ty) * at(i0, j0) + tx * (Real(1) - ty) * at(i0 + 1, j0) +
                   (Real(1) - tx) * ty * at(i0, j0 + 1) + tx * ty * at(i0 + 1, j0 + 1);
    return {v, SampleMode::bilinear};
  }

  [[nodiscard]] double value_at(double x, double y) const { return static_cast<double>(sample(x, y).value); }

  /// Max |value| over the valid interior.
  [[nodiscard]] Real max_abs_interior() const {
    Real m(0);
    for (int i = margin_x_; i < grid_.nx - margin_x_; ++i) {
      for (int j = margin_y_; j < grid_.ny - margin_y_; ++j) {
        using std::abs;
        m = std::max(m, Real(abs(at(i, j))));
      }
    }
    return m;
  }

 private:
  [[nodiscard]] std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(grid_.ny) + static_cast<std::size_t>(j);
  }

  void require_interior(int i0, int j0, int i1, int j1, double x, double y) const {
    if (!interior_node(i0, j0) || !interior_node(i1, j1)) {
      throw OutOfRegion("GridField: point (" + std::to_string(x) + ", " + std::to_string(y) +
                        ") outside the valid interior");
    }
  }

  template <typename Op>
  GridField& combine(const GridField& o, Op op) {
    if (!(grid_ == o.grid_) || accuracy_ != o.accuracy_) throw GridMismatch("GridField: operands on different grids");
    for (std::size_t idx = 0; idx < values_.size(); ++idx) op(values_[idx], o.values_[idx]);
    margin_x_ = std::max(margin_x_, o.margin_x_);
    margin_y_ = std::max(margin_y_, o.margin_y_);
    return *this;
  }

  Grid grid_;
  int accuracy_;
  std::vector<Real> values_;
  int margin_x_ = 0;
  int margin_y_ = 0;
};

}  // namespace zkrdtm
