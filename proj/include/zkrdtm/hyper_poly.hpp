#pragma once

#include <cmath>
#include <compare>
#include <map>
#include <string>
#include <vector>

#include "zkrdtm/field_algebra.hpp"
#include "zkrdtm/rational.hpp"

namespace zkrdtm {

/// Monomial sinh^s(θ)·cosh^c(θ).
struct HyperMonomial {
  int s_exp = 0;
  int c_exp = 0;
  friend auto operator<=>(const HyperMonomial&, const HyperMonomial&) = default;
};

/// Raw, possibly non-canonical term used as input to HyperPoly::normalize.
struct HyperTerm {
  int s_exp = 0;
  int c_exp = 0;
  Rational coeff;
};

/// Exact polynomial in sinh θ and cosh θ with θ = μ·(x + y).
///
/// Canonical form keeps at most one power of sinh; higher powers are
/// rewritten with sinh² = cosh² − 1. Zero terms are never stored, so two
/// values are equal iff their scales and term maps coincide. The zero
/// polynomial is compatible with any scale.
class HyperPoly {
 public:
  using TermMap = std::map<HyperMonomial, Rational>;
  static constexpr const char* backend_tag = "exact";

  HyperPoly() = default;
  explicit HyperPoly(Rational mu) : mu_(std::move(mu)) {}

  static HyperPoly normalize(const Rational& mu, const std::vector<HyperTerm>& raw);
  static HyperPoly constant(const Rational& mu, const Rational& value);
  static HyperPoly sinh(const Rational& mu) { return monomial(mu, 1, 0, Rational(1)); }
  static HyperPoly cosh(const Rational& mu) { return monomial(mu, 0, 1, Rational(1)); }
  static HyperPoly monomial(const Rational& mu, int s_exp, int c_exp, const Rational& coeff);

  [[nodiscard]] const Rational& mu() const { return mu_; }
  [[nodiscard]] const TermMap& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] Rational coeff(int s_exp, int c_exp) const;
  /// Highest cosh exponent among stored terms, or -1 for zero.
  [[nodiscard]] int max_cosh_degree() const;
  /// Highest total degree s_exp + c_exp, or -1 for zero.
  [[nodiscard]] int degree() const;

  HyperPoly& operator+=(const HyperPoly& o);
  HyperPoly& operator-=(const HyperPoly& o);
  friend HyperPoly operator+(HyperPoly a, const HyperPoly& b) { return a += b; }
  friend HyperPoly operator-(HyperPoly a, const HyperPoly& b) { return a -= b; }
  friend HyperPoly operator-(const HyperPoly& a) { return a.scaled(Rational(-1)); }
  friend HyperPoly operator*(const HyperPoly& a, const HyperPoly& b);

  [[nodiscard]] HyperPoly scaled(const Rational& factor) const;
  [[nodiscard]] HyperPoly pow(int n) const;
  /// ∂^order/∂axis^order. Both axes differentiate through θ, so the
  /// result does not depend on the axis.
  [[nodiscard]] HyperPoly diff(Axis axis, int order = 1) const;
  /// Copy with the coefficient of one canonical monomial replaced.
  [[nodiscard]] HyperPoly with_coeff(int s_exp, int c_exp, const Rational& coeff) const;
  [[nodiscard]] HyperPoly zero_like() const { return HyperPoly(mu_); }

  template <typename Real>
  [[nodiscard]] Real eval(const Real& x, const Real& y) const;
  [[nodiscard]] double value_at(double x, double y) const { return eval<double>(x, y); }

  /// Human-readable form, e.g. "-4/3*c^2 + s*c" (s = sinh θ, c = cosh θ).
  [[nodiscard]] std::string str() const;

  friend bool operator==(const HyperPoly& a, const HyperPoly& b);

 private:
  void add_term(const HyperMonomial& m, const Rational& coeff);
  void check_scale(const HyperPoly& o, const char* op) const;

  Rational mu_{1};
  TermMap terms_;
};

template <typename Real>
Real HyperPoly::eval(const Real& x, const Real& y) const {
  using std::cosh;
  using std::sinh;
  if (terms_.empty()) return Real(0);
  const Real theta = mu_.to<Real>() * (x + y);
  const Real s = sinh(theta);
  const Real c = cosh(theta);
  // Horner in cosh for each sinh power; terms_ is ordered by (s_exp, c_exp).
  Real result(0);
  for (int s_exp = 1; s_exp >= 0; --s_exp) {
    Real acc(0);
    int last = -1;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (it->first.s_exp != s_exp) continue;
      if (last >= 0) {
        for (int p = it->first.c_exp; p < last; ++p) acc *= c;
      }
      acc += it->second.to<Real>();
      last = it->first.c_exp;
    }
    if (last < 0) continue;
    for (int p = 0; p < last; ++p) acc *= c;
    result += s_exp == 1 ? acc * s : acc;
  }
  return result;
}

}  // namespace zkrdtm
