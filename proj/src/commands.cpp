#include "zkrdtm/commands.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "zkrdtm/errors.hpp"
#include "zkrdtm/verification.hpp"

namespace zkrdtm {

std::string format_sci10(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of −0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9e", value);
  std::string s(buf);
  const auto e = s.find('e');
  std::string mantissa = s.substr(0, e);
  int exponent = std::stoi(s.substr(e + 1));
  return mantissa + "e" + std::to_string(exponent);
}

std::string format_coordinate(double value) {
  if (value == 0.0) return "0.0";
  char buf[64];
  const double mag = std::abs(value);
  if (mag >= 0.1 && mag < 1e6) {
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed);
    (void)ec;
    std::string s(buf, ptr);
    if (s.find('.') == std::string::npos) s += ".0";
    return s;
  }
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::scientific);
  (void)ec;
  std::string s(buf, ptr);
  const auto e = s.find('e');
  std::string mantissa = s.substr(0, e);
  if (mantissa.find('.') == std::string::npos) mantissa += ".0";
  return mantissa + "e" + std::to_string(std::stoi(s.substr(e + 1)));
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError(0, "cannot write output file '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw ConfigError(0, "failed writing output file '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, target);
}

namespace {

PDESpec checked_spec(const RunConfig& c) {
  validate_config(c);
  return c.pde;
}

InitialCondition<HyperPoly> exact_ic(const RunConfig& c) {
  return {exact_profile(c.ic), c.ic.amplitude};
}

template <typename Real>
InitialCondition<GridField<Real>> grid_ic(const IcConfig& ic, const Grid& geometry, int accuracy) {
  auto field = GridField<Real>::from_function(
      geometry, [&](const Real& x, const Real& y) { return ic_value<Real>(ic, x, y); }, accuracy);
  return {std::move(field), ic.amplitude};
}

std::vector<std::array<double, 3>> xyt_points(const RunConfig& c) {
  std::vector<std::array<double, 3>> pts;
  for (const auto& p : c.points) pts.push_back({p.x, p.y, p.t});
  return pts;
}

std::vector<std::array<double, 2>> xy_points(const RunConfig& c) {
  std::vector<std::array<double, 2>> pts;
  for (const auto& p : c.points) pts.push_back({p.x, p.y});
  return pts;
}

/// Runs `fn` with the scalar type selected by the grid precision.
template <typename Fn>
decltype(auto) with_precision(const GridConfig& g, Fn&& fn) {
  if (g.precision == Precision::binary128) return fn(quad{});
  return fn(double{});
}

std::string solve_report_exact(const RunConfig& c, const SeriesSolution<HyperPoly>& S) {
  std::ostringstream os;
  os << "# backend=exact order=" << S.order() << " mu=" << c.ic.scale.str() << " lambda=" << c.ic.amplitude.str()
     << "\n";
  os << "k,s_exp,c_exp,numerator,denominator\n";
  for (int k = 0; k <= S.order(); ++k) {
    const auto& terms = S.coeff(k).terms();
    // Descending cosh power reads like the printed closed forms.
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
      os << k << "," << it->first.s_exp << "," << it->first.c_exp << "," << it->second.numerator().get_str() << ","
         << it->second.denominator().get_str() << "\n";
    }
  }
  return os.str();
}

template <typename Real>
std::string solve_report_grid(const SeriesSolution<GridField<Real>>& S) {
  std::ostringstream os;
  const Grid& g = S.coeff(0).grid();
  os << "# backend=grid order=" << S.order() << " nx=" << g.nx << " ny=" << g.ny << " dx=" << format_coordinate(g.dx)
     << " dy=" << format_coordinate(g.dy) << "\n";
  os << "k,margin_x,margin_y,min,max,max_abs\n";
  for (int k = 0; k <= S.order(); ++k) {
    const auto& f = S.coeff(k);
    Real lo(0), hi(0);
    bool first = true;
    for (int i = f.margin_x(); i < g.nx - f.margin_x(); ++i) {
      for (int j = f.margin_y(); j < g.ny - f.margin_y(); ++j) {
        const Real v = f.at(i, j);
        if (first || v < lo) lo = v;
        if (first || v > hi) hi = v;
        first = false;
      }
    }
    os << k << "," << f.margin_x() << "," << f.margin_y() << "," << format_sci10(static_cast<double>(lo)) << ","
       << format_sci10(static_cast<double>(hi)) << "," << format_sci10(static_cast<double>(f.max_abs_interior()))
       << "\n";
  }
  return os.str();
}

std::string table_csv(const std::vector<TableRow>& rows) {
  std::ostringstream os;
  os << "lambda,x,y,t,u_rdtm,self_error,ref_error\n";
  for (const auto& r : rows) {
    os << format_coordinate(r.lambda) << "," << format_coordinate(r.x) << "," << format_coordinate(r.y) << ","
       << format_coordinate(r.t) << "," << format_sci10(r.rdtm_value) << "," << format_sci10(r.self_error) << ",\n";
  }
  return os.str();
}

std::string plot_csv(const std::vector<TableRow>& rows) {
  std::ostringstream os;
  os << "x,y,self_error\n";
  for (const auto& r : rows) {
    os << format_coordinate(r.x) << "," << format_coordinate(r.y) << "," << format_sci10(r.self_error) << "\n";
  }
  return os.str();
}

/// Lattice over [−2, 2]² with step 0.1 at the first evaluation time.
std::vector<std::array<double, 3>> plot_lattice(const RunConfig& c) {
  const double t = c.points.empty() ? 1e-3 : c.points.front().t;
  std::vector<std::array<double, 3>> pts;
  for (int i = -20; i <= 20; ++i) {
    for (int j = -20; j <= 20; ++j) pts.push_back({i / 10.0, j / 10.0, t});
  }
  return pts;
}

template <FieldAlgebra F>
std::string residual_csv(const ResidualReport<F>& report) {
  std::ostringstream os;
  os << "k,exact_zero,norm,scale,bound\n";
  for (std::size_t k = 0; k < report.norms.size(); ++k) {
    os << k << "," << (report.exact_zero[k] ? "true" : "false") << "," << format_sci10(report.norms[k]) << ","
       << format_sci10(report.scales[k]) << "," << format_sci10(report.bounds[k]) << "\n";
  }
  return os.str();
}

void check_corrupt_index(const CommandOptions& options, int order) {
  if (options.corrupt_index && (*options.corrupt_index < 1 || *options.corrupt_index > order)) {
    throw ConfigError(0, "corruption index must be in 1..order");
  }
}

}  // namespace

int cmd_solve(const RunConfig& c, std::ostream& diag) {
  const PDESpec spec = checked_spec(c);
  std::string report;
  if (c.backend == Backend::exact) {
    report = solve_report_exact(c, solve(spec, exact_ic(c), c.order));
  } else {
    report = with_precision(*c.grid, [&](auto tag) {
      using Real = decltype(tag);
      return solve_report_grid(solve(spec, grid_ic<Real>(c.ic, c.grid->geometry, c.grid->accuracy), c.order));
    });
  }
  write_output(c.output.path, report);
  diag << "solve: wrote U_0..U_" << c.order << " (" << (c.backend == Backend::exact ? "exact" : "grid") << ")\n";
  return exit_ok;
}

int cmd_table(const RunConfig& c, std::ostream& diag) {
  const PDESpec spec = checked_spec(c);
  const double lambda = c.ic.amplitude.to_double();
  std::vector<TableRow> rows;
  std::vector<TableRow> plot;
  const bool want_plot = !c.output.plot_path.empty();
  if (c.backend == Backend::exact) {
    const auto S = solve(spec, exact_ic(c), c.order + 2);
    rows = table_rows(S, c.order, lambda, xyt_points(c));
    if (want_plot) plot = table_rows(S, c.order, lambda, plot_lattice(c));
  } else {
    with_precision(*c.grid, [&](auto tag) {
      using Real = decltype(tag);
      const auto S = solve(spec, grid_ic<Real>(c.ic, c.grid->geometry, c.grid->accuracy), c.order + 2);
      rows = table_rows(S, c.order, lambda, xyt_points(c));
      if (want_plot) plot = table_rows(S, c.order, lambda, plot_lattice(c));
      return 0;
    });
  }
  const std::string csv = table_csv(rows);
  const std::string plot_text = want_plot ? plot_csv(plot) : std::string();
  write_output(c.output.path, csv);
  if (want_plot) write_output(c.output.plot_path, plot_text);
  diag << "table: " << rows.size() << " rows\n";
  return exit_ok;
}

int cmd_residual(const RunConfig& c, const CommandOptions& options, std::ostream& diag) {
  const PDESpec spec = checked_spec(c);
  check_corrupt_index(options, c.order);
  auto finish = [&](const auto& report) {
    if (!report.all_zero()) {
      for (std::size_t k = 0; k < report.norms.size(); ++k) {
        if (!report.passed(k)) diag << "residual: R_" << k << " nonzero (norm " << format_sci10(report.norms[k]) << ")\n";
      }
      throw InvariantFailure("residual check failed");
    }
    write_output(c.output.path, residual_csv(report));
    diag << "residual: R_0..R_" << report.order - 1 << " vanish\n";
    return exit_ok;
  };
  if (c.backend == Backend::exact) {
    auto S = solve(spec, exact_ic(c), c.order);
    if (options.corrupt_index) {
      const int k = *options.corrupt_index;
      const auto& terms = S.coeff(k).terms();
      if (!terms.empty()) {
        const auto& [m, coeff] = *terms.rbegin();
        S.replace(k, S.coeff(k).with_coeff(m.s_exp, m.c_exp, -coeff));
      } else {
        S.replace(k, HyperPoly::constant(S.coeff(k).mu(), Rational(1)));
      }
    }
    return finish(residual_series(spec, S));
  }
  return with_precision(*c.grid, [&](auto tag) {
    using Real = decltype(tag);
    auto S = solve(spec, grid_ic<Real>(c.ic, c.grid->geometry, c.grid->accuracy), c.order);
    if (options.corrupt_index) {
      const int k = *options.corrupt_index;
      S.replace(k, S.coeff(k).scaled(Rational(-1)) + S.coeff(k).zero_like());
    }
    return finish(residual_series(spec, S));
  });
}

int cmd_compare(const RunConfig& c, std::ostream& diag) {
  const PDESpec spec = checked_spec(c);
  if (c.backend != Backend::grid || !c.grid) throw ConfigError(0, "compare requires backend = grid and a [grid] section");
  const HyperPoly profile = exact_profile(c.ic);
  const GridConfig& g = *c.grid;
  std::ostringstream os;
  with_precision(g, [&](auto tag) {
    using Real = decltype(tag);
    const auto exact = solve(spec, InitialCondition<HyperPoly>{profile, c.ic.amplitude}, c.order);
    const auto grid = solve(spec, grid_ic<Real>(c.ic, g.geometry, g.accuracy), c.order);
    const auto per_k = cross_validate_by_order(exact, grid, xy_points(c));
    os << "metric,value\n";
    os << "precision," << (g.precision == Precision::binary64 ? "binary64" : "binary128") << "\n";
    os << "points," << c.points.size() << "\n";
    double worst = 0.0;
    for (std::size_t k = 0; k < per_k.size(); ++k) {
      os << "discrepancy_U" << k << "," << format_sci10(per_k[k]) << "\n";
      worst = std::max(worst, per_k[k]);
    }
    os << "max_discrepancy," << format_sci10(worst) << "\n";
    if (g.refine) {
      Grid fine = g.geometry;
      fine.dx /= 2;
      fine.dy /= 2;
      fine.nx = 2 * (fine.nx - 1) + 1;
      fine.ny = 2 * (fine.ny - 1) + 1;
      const auto conv = measure_grid_convergence<Real>(spec, profile, g.geometry, fine, c.order, g.region, g.accuracy);
      os << "convergence_index," << c.order << "\n";
      os << "region_half_width," << format_coordinate(g.region) << "\n";
      os << "h_coarse," << format_coordinate(conv.h_coarse) << "\n";
      os << "h_fine," << format_coordinate(conv.h_fine) << "\n";
      os << "error_coarse," << format_sci10(conv.error_coarse) << "\n";
      os << "error_fine," << format_sci10(conv.error_fine) << "\n";
      os << "measured_order," << format_sci10(conv.order) << "\n";
      diag << "compare: measured order " << conv.order << "\n";
    }
    return 0;
  });
  write_output(c.output.path, os.str());
  return exit_ok;
}

int run_command(const std::string& name, const RunConfig& config, const CommandOptions& options, std::ostream& diag) {
  try {
    if (name == "solve") return cmd_solve(config, diag);
    if (name == "table") return cmd_table(config, diag);
    if (name == "residual") return cmd_residual(config, options, diag);
    if (name == "compare") return cmd_compare(config, diag);
    diag << "error: unknown command '" << name << "'\n";
    return exit_config_error;
  } catch (const ConfigError& e) {
    diag << "config error: " << e.what() << "\n";
    return exit_config_error;
  } catch (const DomainExhausted& e) {
    diag << "domain exhausted: " << e.what() << "\n";
    return exit_domain_exhausted;
  } catch (const OutOfRegion& e) {
    diag << "out of region: " << e.what() << "\n";
    return exit_domain_exhausted;
  } catch (const InvariantFailure& e) {
    diag << "invariant failure: " << e.what() << "\n";
    return exit_invariant_failure;
  } catch (const std::exception& e) {
    diag << "internal error: " << e.what() << "\n";
    return exit_invariant_failure;
  }
}

}  // namespace zkrdtm
