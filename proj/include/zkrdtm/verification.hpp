#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "zkrdtm/fixtures.hpp"
#include "zkrdtm/grid.hpp"
#include "zkrdtm/hyper_poly.hpp"
#include "zkrdtm/series.hpp"

namespace zkrdtm {

/// t^k coefficient of (Σ U_j t^j)^n by enumerating every index n-tuple
/// (i_1..i_n) with Σ i = k. Independent of the Cauchy-product path; only
/// meant for oracle sizes (n <= 4).
template <FieldAlgebra F>
F brute_force_power_coefficient(const SeriesSolution<F>& S, int n, int k) {
  if (n < 1 || n > 4) throw std::invalid_argument("brute_force_power_coefficient: n must be in 1..4");
  if (k < 0 || k > S.order()) throw std::out_of_range("brute_force_power_coefficient: index exceeds order");
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  F total = S.coeff(0).zero_like();
  bool any = false;
  std::function<void(int, int)> rec = [&](int pos, int remaining) {
    if (pos == n - 1) {
      idx[static_cast<std::size_t>(pos)] = remaining;
      F prod = S.coeff(idx[0]);
      for (int p = 1; p < n; ++p) prod = prod * S.coeff(idx[static_cast<std::size_t>(p)]);
      total = any ? total + prod : prod;
      any = true;
      return;
    }
    for (int i = 0; i <= remaining; ++i) {
      idx[static_cast<std::size_t>(pos)] = i;
      rec(pos + 1, remaining - i);
    }
  };
  rec(0, k);
  return total;
}

inline double field_norm(const HyperPoly& p) {
  double s = 0.0;
  for (const auto& [m, c] : p.terms()) s += std::abs(c.to_double());
  return s;
}

template <typename Real>
double field_norm(const GridField<Real>& f) {
  return static_cast<double>(f.max_abs_interior());
}

inline bool field_exact_zero(const HyperPoly& p) { return p.is_zero(); }

template <typename Real>
bool field_exact_zero(const GridField<Real>&) {
  return false;
}

/// Relative residual tolerance: zero for the exact backend, a roundoff
/// allowance for grid fields.
inline double residual_relative_bound(const HyperPoly&) { return 0.0; }

template <typename Real>
double residual_relative_bound(const GridField<Real>&) {
  return 1e4 * static_cast<double>(std::numeric_limits<Real>::epsilon());
}

template <FieldAlgebra F>
struct ResidualReport {
  int order = 0;
  /// R_k = (k+1)·U_{k+1} + N_k for k = 0..order−1.
  std::vector<F> residuals;
  /// Coefficient 1-norm (exact) or interior max-abs (grid) of R_k.
  std::vector<double> norms;
  /// Norm of (k+1)·U_{k+1}, the scale R_k is measured against.
  std::vector<double> scales;
  /// Pass threshold per k: zero for the exact backend.
  std::vector<double> bounds;
  std::vector<bool> exact_zero;
  bool exact_backend = false;

  [[nodiscard]] bool passed(std::size_t k) const { return exact_backend ? exact_zero[k] : norms[k] <= bounds[k]; }
  [[nodiscard]] bool all_zero() const {
    for (std::size_t k = 0; k < norms.size(); ++k) {
      if (!passed(k)) return false;
    }
    return true;
  }
};

/// Recomputes every N_k through brute_force_power_coefficient and checks
/// that the recursion (k+1)U_{k+1} + N_k = 0 holds for k < order.
template <FieldAlgebra F>
ResidualReport<F> residual_series(const PDESpec& spec, const SeriesSolution<F>& S) {
  ResidualReport<F> report;
  report.order = S.order();
  report.exact_backend = std::is_same_v<F, HyperPoly>;
  for (int k = 0; k < S.order(); ++k) {
    const F lhs = S.coeff(k + 1).scaled(Rational(k + 1));
    const F N = apply_dispersive_operator(spec, brute_force_power_coefficient(S, spec.n, k));
    F R = lhs + N;
    const double scale = field_norm(lhs);
    report.norms.push_back(field_norm(R));
    report.scales.push_back(scale);
    report.bounds.push_back(residual_relative_bound(lhs) * scale);
    report.exact_zero.push_back(field_exact_zero(R));
    report.residuals.push_back(std::move(R));
  }
  return report;
}

/// |∂t ũ + a(ũⁿ)_x + b(ũⁿ)_xxx + k(ũⁿ)_yyx| at (x, y, t) for the truncated
/// exact series ũ. Spatial derivatives are exact; with h_t > 0 the time
/// derivative is the central difference of step h_t, with h_t == 0 it is
/// the exact derivative of the t-polynomial. The combination is formed in
/// rational arithmetic and only the final value is rounded.
double pointwise_residual(const PDESpec& spec, const SeriesSolution<HyperPoly>& S, double x, double y, double t,
                          double h_t = 0.0);

/// Per-k max over points of |U_k^exact − U_k^grid|.
template <typename Real>
std::vector<double> cross_validate_by_order(const SeriesSolution<HyperPoly>& exact,
                                            const SeriesSolution<GridField<Real>>& grid,
                                            const std::vector<std::array<double, 2>>& points) {
  if (exact.order() != grid.order()) throw std::invalid_argument("cross_validate: orders differ");
  using std::abs;
  std::vector<double> out;
  for (int k = 0; k <= exact.order(); ++k) {
    Real worst(0);
    for (const auto& p : points) {
      const Real g = grid.coeff(k).sample(p[0], p[1]).value;
      const Real e = exact.coeff(k).eval<Real>(Real(p[0]), Real(p[1]));
      worst = std::max(worst, Real(abs(g - e)));
    }
    out.push_back(static_cast<double>(worst));
  }
  return out;
}

/// max over points and k of |U_k^exact − U_k^grid|.
template <typename Real>
double cross_validate(const SeriesSolution<HyperPoly>& exact, const SeriesSolution<GridField<Real>>& grid,
                      const std::vector<std::array<double, 2>>& points) {
  double worst = 0.0;
  for (double d : cross_validate_by_order(exact, grid, points)) worst = std::max(worst, d);
  return worst;
}

struct ConvergenceResult {
  double h_coarse = 0.0;
  double h_fine = 0.0;
  double error_coarse = 0.0;
  double error_fine = 0.0;
  /// log2(error_coarse / error_fine) scaled to the actual spacing ratio.
  double order = 0.0;
};

/// Max error of U_k on grid nodes with |x|, |y| <= half_width, grid vs exact.
template <typename Real>
double grid_coefficient_error(const SeriesSolution<HyperPoly>& exact, const SeriesSolution<GridField<Real>>& grid,
                              int k, double half_width) {
  const GridField<Real>& f = grid.coeff(k);
  const Grid& g = f.grid();
  using std::abs;
  Real worst(0);
  bool covered = false;
  for (int i = 0; i < g.nx; ++i) {
    const Real x = f.node_x(i);
    if (static_cast<double>(abs(x)) > half_width + 1e-12) continue;
    for (int j = 0; j < g.ny; ++j) {
      const Real y = f.node_y(j);
      if (static_cast<double>(abs(y)) > half_width + 1e-12) continue;
      if (!f.interior_node(i, j)) {
        throw OutOfRegion("grid_coefficient_error: comparison region exceeds the valid interior");
      }
      worst = std::max(worst, Real(abs(f.at(i, j) - exact.coeff(k).eval<Real>(x, y))));
      covered = true;
    }
  }
  if (!covered) throw OutOfRegion("grid_coefficient_error: no grid nodes inside the comparison region");
  return static_cast<double>(worst);
}

/// Solves on two grids with the IC sampled from the exact profile and
/// measures the convergence order of U_k against the exact backend.
template <typename Real>
ConvergenceResult measure_grid_convergence(const PDESpec& spec, const HyperPoly& profile, const Grid& coarse,
                                           const Grid& fine, int k, double half_width, int accuracy_order = 8) {
  auto run = [&](const Grid& g) {
    auto ic_field = GridField<Real>::from_function(
        g, [&](const Real& x, const Real& y) { return profile.eval<Real>(x, y); }, accuracy_order);
    const auto grid_solution = solve(spec, InitialCondition<GridField<Real>>{std::move(ic_field), std::nullopt}, k);
    const auto exact_solution = solve(spec, InitialCondition<HyperPoly>{profile, std::nullopt}, k);
    return grid_coefficient_error(exact_solution, grid_solution, k, half_width);
  };
  ConvergenceResult r;
  r.h_coarse = coarse.dx;
  r.h_fine = fine.dx;
  r.error_coarse = run(coarse);
  r.error_fine = run(fine);
  r.order = std::log(r.error_coarse / r.error_fine) / std::log(r.h_coarse / r.h_fine);
  return r;
}

struct TableRow {
  double lambda = 0.0;
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;
  double rdtm_value = 0.0;
  /// |ũ_{K+2} − ũ_K|
  double self_error = 0.0;
};

/// Table rows from a series solved to order K+2: the order-K value at each
/// (x, y, t) and |ũ_{K+2} − ũ_K|, summed as the two-term tail so the tiny
/// difference is not lost to cancellation.
template <FieldAlgebra F>
std::vector<TableRow> table_rows(const SeriesSolution<F>& extended, int K, double lambda,
                                 const std::vector<std::array<double, 3>>& points) {
  if (extended.order() < K + 2) throw std::invalid_argument("table_rows: series must extend to order K+2");
  std::vector<TableRow> rows;
  rows.reserve(points.size());
  for (const auto& [x, y, t] : points) {
    TableRow row{lambda, x, y, t, 0.0, 0.0};
    double value = 0.0;
    for (int k = K; k >= 0; --k) value = value * t + static_cast<double>(extended.coeff(k).value_at(x, y));
    row.rdtm_value = value;
    double tail = 0.0;
    for (int k = K + 2; k > K; --k) tail = (tail + static_cast<double>(extended.coeff(k).value_at(x, y))) * t;
    for (int k = 0; k < K; ++k) tail *= t;
    row.self_error = std::abs(tail);
    rows.push_back(row);
  }
  return rows;
}

/// Evaluates the order-K exact series at each (x, y) and time t, with the
/// self-convergence estimate from the order-(K+2) series.
std::vector<TableRow> reproduce_table(const ExactProblem& problem, double lambda, double t,
                                      const std::vector<std::array<double, 2>>& points, int K = 4);

/// Row set {0, 0.5, 1}² in x-major order, λ = 1e−5, t = 1e−3, K = 4.
std::vector<TableRow> reproduce_table(TableExample example);

std::vector<std::array<double, 2>> default_table_points();

/// The published RDTM column for each example, exactly as printed
/// (including the suspected exponent misprint in the last zk22 row).
std::vector<double> published_rdtm_values(TableExample example);

/// True when |a − b| is at most half a unit in the digits-th significant
/// digit of b.
bool agrees_to_significant_digits(double a, double b, int digits);

/// True when a and b share their leading significant digits but differ by
/// a nonzero power of ten.
bool exponent_misprint(double a, double b, int digits);

}  // namespace zkrdtm
