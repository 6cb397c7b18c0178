#include "zkrdtm/hyper_poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "zkrdtm/errors.hpp"

namespace zkrdtm {

void HyperPoly::add_term(const HyperMonomial& m, const Rational& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void HyperPoly::check_scale(const HyperPoly& o, const char* op) const {
  if (!is_zero() && !o.is_zero() && mu_ != o.mu_) {
    throw ScaleMismatch(std::string("HyperPoly ") + op + ": argument scales differ (" + mu_.str() + " vs " +
                        o.mu_.str() + ")");
  }
}

HyperPoly HyperPoly::normalize(const Rational& mu, const std::vector<HyperTerm>& raw) {
  HyperPoly out(mu);
  for (const auto& t : raw) {
    if (t.s_exp < 0 || t.c_exp < 0) throw std::invalid_argument("HyperPoly: negative exponent");
    // sinh^(2m+e) = (cosh² − 1)^m · sinh^e
    const int m = t.s_exp / 2;
    const int e = t.s_exp % 2;
    mpz_class binom = 1;
    for (int i = 0; i <= m; ++i) {
      // coefficient of cosh^(2i) in (c² − 1)^m is C(m,i)·(−1)^(m−i)
      if (i > 0) {
        binom = binom * (m - i + 1) / i;
      }
      Rational c{mpq_class(binom)};
      if ((m - i) % 2 != 0) c = -c;
      out.add_term({e, t.c_exp + 2 * i}, t.coeff * c);
    }
  }
  return out;
}

HyperPoly HyperPoly::constant(const Rational& mu, const Rational& value) { return monomial(mu, 0, 0, value); }

HyperPoly HyperPoly::monomial(const Rational& mu, int s_exp, int c_exp, const Rational& coeff) {
  return normalize(mu, {{s_exp, c_exp, coeff}});
}

Rational HyperPoly::coeff(int s_exp, int c_exp) const {
  const auto it = terms_.find({s_exp, c_exp});
  return it == terms_.end() ? Rational(0) : it->second;
}

int HyperPoly::max_cosh_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.c_exp);
  return d;
}

int HyperPoly::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.s_exp + m.c_exp);
  return d;
}

HyperPoly& HyperPoly::operator+=(const HyperPoly& o) {
  check_scale(o, "add");
  if (is_zero()) mu_ = o.mu_;
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

HyperPoly& HyperPoly::operator-=(const HyperPoly& o) {
  check_scale(o, "sub");
  if (is_zero()) mu_ = o.mu_;
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

HyperPoly operator*(const HyperPoly& a, const HyperPoly& b) {
  a.check_scale(b, "mul");
  HyperPoly out(a.is_zero() ? b.mu_ : a.mu_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      const Rational prod = ca * cb;
      const int s = ma.s_exp + mb.s_exp;
      const int c = ma.c_exp + mb.c_exp;
      if (s == 2) {
        out.add_term({0, c + 2}, prod);
        out.add_term({0, c}, -prod);
      } else {
        out.add_term({s, c}, prod);
      }
    }
  }
  return out;
}

HyperPoly HyperPoly::scaled(const Rational& factor) const {
  HyperPoly out(mu_);
  if (factor.is_zero()) return out;
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, c * factor);
  return out;
}

HyperPoly HyperPoly::pow(int n) const {
  if (n < 1) throw std::invalid_argument("HyperPoly::pow: exponent must be >= 1");
  HyperPoly result = *this;
  HyperPoly base = *this;
  int e = n - 1;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

HyperPoly HyperPoly::diff(Axis, int order) const {
  if (order < 0) throw std::invalid_argument("HyperPoly::diff: negative order");
  HyperPoly cur = *this;
  for (int step = 0; step < order; ++step) {
    HyperPoly next(mu_);
    for (const auto& [m, c] : cur.terms_) {
      const Rational k = c * mu_;
      if (m.s_exp == 0) {
        // d/dθ cosh^j = j·sinh·cosh^(j−1)
        if (m.c_exp > 0) next.add_term({1, m.c_exp - 1}, k * Rational(m.c_exp));
      } else {
        // d/dθ sinh·cosh^j = (j+1)·cosh^(j+1) − j·cosh^(j−1)
        next.add_term({0, m.c_exp + 1}, k * Rational(m.c_exp + 1));
        if (m.c_exp > 0) next.add_term({0, m.c_exp - 1}, -(k * Rational(m.c_exp)));
      }
    }
    cur = std::move(next);
  }
  return cur;
}

HyperPoly HyperPoly::with_coeff(int s_exp, int c_exp, const Rational& coeff) const {
  if (s_exp < 0 || s_exp > 1 || c_exp < 0) throw std::invalid_argument("HyperPoly::with_coeff: non-canonical monomial");
  HyperPoly out = *this;
  out.terms_.erase({s_exp, c_exp});
  out.add_term({s_exp, c_exp}, coeff);
  return out;
}

std::string HyperPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Descending cosh degree, sinh terms before plain ones at equal degree.
  std::vector<std::pair<HyperMonomial, Rational>> items(terms_.begin(), terms_.end());
  std::sort(items.begin(), items.end(), [](const auto& l, const auto& r) {
    if (l.first.c_exp != r.first.c_exp) return l.first.c_exp > r.first.c_exp;
    return l.first.s_exp > r.first.s_exp;
  });
  for (const auto& [m, c] : items) {
    Rational mag = abs(c);
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = mag == Rational(1);
    bool need_star = false;
    if (!unit || (m.s_exp == 0 && m.c_exp == 0)) {
      os << mag.str();
      need_star = true;
    }
    if (m.s_exp == 1) {
      os << (need_star ? "*" : "") << "s";
      need_star = true;
    }
    if (m.c_exp > 0) {
      os << (need_star ? "*" : "") << "c";
      if (m.c_exp > 1) os << "^" << m.c_exp;
    }
  }
  return os.str();
}

bool operator==(const HyperPoly& a, const HyperPoly& b) {
  if (a.terms_.empty() && b.terms_.empty()) return true;
  return a.mu_ == b.mu_ && a.terms_ == b.terms_;
}

}  // namespace zkrdtm
