#include "zkrdtm/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace zkrdtm {

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw std::domain_error("Rational: zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) throw std::domain_error("Rational: non-finite double");
  return Rational(mpq_class(value));
}

double Rational::to_double() const {
  // mpq_get_d truncates toward zero; compare against the next double out.
  const double truncated = value_.get_d();
  if (!std::isfinite(truncated)) return truncated;
  const double away = std::nextafter(truncated, sign() < 0 ? -HUGE_VAL : HUGE_VAL);
  if (!std::isfinite(away)) return truncated;
  const mpq_class lo_err = abs(value_ - mpq_class(truncated));
  const mpq_class hi_err = abs(value_ - mpq_class(away));
  if (cmp(hi_err, lo_err) < 0) return away;
  if (cmp(hi_err, lo_err) == 0) {
    // ties to even mantissa
    int exp_t = 0;
    const double m = std::frexp(truncated, &exp_t);
    const auto bits = static_cast<long long>(std::ldexp(std::abs(m), 53));
    return (bits & 1) == 0 ? truncated : away;
  }
  return truncated;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  value_ /= o.value_;
  return *this;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  std::string_view digits = s;
  bool negative = false;
  if (!digits.empty() && (digits.front() == '+' || digits.front() == '-')) {
    negative = digits.front() == '-';
    digits.remove_prefix(1);
  }
  if (!all_digits(digits)) throw std::invalid_argument("not a rational number: '" + std::string(whole) + "'");
  mpz_class z(std::string(digits), 10);
  return negative ? mpz_class(-z) : z;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const std::string_view whole = text;
  if (text.empty()) throw std::invalid_argument("empty rational literal");

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(text.substr(0, slash), whole);
    mpz_class den = parse_integer(text.substr(slash + 1), whole);
    if (sgn(den) == 0) throw std::invalid_argument("zero denominator in '" + std::string(whole) + "'");
    mpq_class q(num, den);
    q.canonicalize();
    return Rational(q);
  }

  // Decimal literal: [sign] digits [. digits] [e|E [sign] digits]
  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  long exponent = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    const mpz_class ez = parse_integer(text.substr(e + 1), whole);
    if (!ez.fits_slong_p() || abs(ez) > 100000) throw std::invalid_argument("exponent out of range in '" + std::string(whole) + "'");
    exponent = ez.get_si();
    text = text.substr(0, e);
  }
  std::string digits;
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view ip = text.substr(0, dot);
    const std::string_view fp = text.substr(dot + 1);
    if (ip.empty() && fp.empty()) throw std::invalid_argument("not a rational number: '" + std::string(whole) + "'");
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
      throw std::invalid_argument("not a rational number: '" + std::string(whole) + "'");
    digits = std::string(ip) + std::string(fp);
    exponent -= static_cast<long>(fp.size());
  } else {
    if (!all_digits(text)) throw std::invalid_argument("not a rational number: '" + std::string(whole) + "'");
    digits = std::string(text);
  }
  if (digits.empty()) digits = "0";
  mpq_class q{mpz_class(digits, 10)};
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  if (exponent < 0) {
    q /= scale;
  } else {
    q *= scale;
  }
  q.canonicalize();
  if (negative) q = -q;
  return Rational(q);
}

Rational pow(const Rational& base, unsigned exponent) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.value().get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.value().get_den_mpz_t(), exponent);
  return Rational(mpq_class(num, den));
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace zkrdtm
