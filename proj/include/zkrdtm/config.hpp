#pragma once

// Run configuration for the zkrdtm command line tool.
//
// Grammar: `[section]` headers, `key = value` lines, `#` starts a comment.
//
//   [pde]     a, b, k (rationals, b > 0, k > 0), n (integer >= 2)
//   [ic]      family = sinh | cosh_squared | gaussian | sech_squared
//             amplitude (λ), scale (μ), coefficient (optional prefactor)
//   [solve]   order (K >= 0, default 4), backend = exact | grid
//   [grid]    x0, y0, dx, dy, nx, ny, accuracy (2..8, default 8),
//             precision = binary64 | binary128, refine = true | false,
//             region (half-width of the comparison square)
//   [eval]    t (comma list), x, y (comma lists; lattice x × y × t) or
//             points = x,y,t; x,y,t; ...
//   [output]  path, format = csv, plot (optional lattice CSV path)
//
// Rationals accept "p", "p/q" and exact decimal literals ("1e-5" is 1/100000).

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "zkrdtm/grid.hpp"
#include "zkrdtm/hyper_poly.hpp"
#include "zkrdtm/rational.hpp"
#include "zkrdtm/series.hpp"

namespace zkrdtm {

/// Malformed or invalid configuration; `line` is 0 when not tied to a line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& message)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}
  [[nodiscard]] int line() const { return line_; }

 private:
  int line_;
};

enum class Backend { exact, grid };
enum class Precision { binary64, binary128 };

struct IcConfig {
  std::string family = "sinh";
  Rational amplitude{0};
  Rational scale{1};
  Rational coefficient{0};
  friend bool operator==(const IcConfig&, const IcConfig&) = default;
};

struct GridConfig {
  Grid geometry;
  int accuracy = 8;
  Precision precision = Precision::binary64;
  bool refine = true;
  double region = 2.0;
  friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

struct EvalPoint {
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;
  friend bool operator==(const EvalPoint&, const EvalPoint&) = default;
};

struct OutputConfig {
  std::string path;
  std::string format = "csv";
  std::string plot_path;
  friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

struct RunConfig {
  PDESpec pde;
  IcConfig ic;
  int order = 4;
  Backend backend = Backend::exact;
  std::optional<GridConfig> grid;
  std::vector<EvalPoint> points;
  OutputConfig output;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);
std::string render_config(const RunConfig& config);

/// Re-checks cross-field constraints (used after command-line overrides).
void validate_config(const RunConfig& config);

/// Default prefactor of an initial-condition family.
Rational default_coefficient(std::string_view family);
bool is_exact_family(std::string_view family);

/// coefficient·λ·(family profile) as an exact HyperPoly; throws ConfigError
/// for families outside the hyperbolic-polynomial ring.
HyperPoly exact_profile(const IcConfig& ic);

/// coefficient·λ·(family profile) evaluated pointwise.
template <typename Real>
Real ic_value(const IcConfig& ic, const Real& x, const Real& y) {
  using std::cosh;
  using std::exp;
  using std::sinh;
  const Real amp = (ic.coefficient * ic.amplitude).to<Real>();
  const Real mu = ic.scale.to<Real>();
  if (ic.family == "sinh") return amp * sinh(mu * (x + y));
  if (ic.family == "cosh_squared") {
    const Real c = cosh(mu * (x + y));
    return amp * c * c;
  }
  if (ic.family == "gaussian") return amp * exp(-mu * (x * x + y * y));
  if (ic.family == "sech_squared") {
    const Real c = cosh(mu * (x + y));
    return amp / (c * c);
  }
  throw ConfigError(0, "unknown initial-condition family '" + ic.family + "'");
}

/// Row set {0, 0.5, 1}² at t = 1e-3.
std::vector<EvalPoint> default_eval_points();

}  // namespace zkrdtm
