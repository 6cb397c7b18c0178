#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>

#include <gmpxx.h>

namespace zkrdtm {

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long numerator, long denominator);
  explicit Rational(mpq_class value);

  /// Exact binary value of a finite double.
  static Rational from_double(double value);

  /// Parses "p", "p/q", or a decimal literal such as "-1.25e-5" exactly.
  /// Throws std::invalid_argument on malformed input.
  static Rational parse(std::string_view text);

  [[nodiscard]] const mpq_class& value() const { return value_; }
  [[nodiscard]] mpz_class numerator() const { return value_.get_num(); }
  [[nodiscard]] mpz_class denominator() const { return value_.get_den(); }

  [[nodiscard]] bool is_zero() const { return sgn(value_) == 0; }
  [[nodiscard]] int sign() const { return sgn(value_); }

  /// Correctly rounded (nearest) double.
  [[nodiscard]] double to_double() const;

  /// Conversion to an arbitrary floating type constructible from uint64_t.
  template <typename Real>
  [[nodiscard]] Real to() const;

  /// "p" when the denominator is 1, else "p/q".
  [[nodiscard]] std::string str() const { return value_.get_str(); }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_{0};
};

Rational pow(const Rational& base, unsigned exponent);
Rational abs(const Rational& r);

namespace detail {

template <typename Real>
Real mpz_to(const mpz_class& z) {
  // Horner over 32-bit chunks, most significant first.
  mpz_class mag = abs(z);
  const std::size_t bits = mpz_sizeinbase(mag.get_mpz_t(), 2);
  const std::size_t chunks = (bits + 31) / 32;
  Real acc(0);
  const Real base = Real(static_cast<std::uint64_t>(1) << 32);
  for (std::size_t i = chunks; i-- > 0;) {
    mpz_class chunk = mag >> static_cast<mp_bitcnt_t>(32 * i);
    chunk &= mpz_class(0xFFFFFFFFul);
    acc = acc * base + Real(static_cast<std::uint64_t>(chunk.get_ui()));
  }
  return sgn(z) < 0 ? -acc : acc;
}

}  // namespace detail

template <typename Real>
Real Rational::to() const {
  if constexpr (std::is_same_v<Real, double>) {
    return to_double();
  } else {
    return detail::mpz_to<Real>(value_.get_num()) / detail::mpz_to<Real>(value_.get_den());
  }
}

}  // namespace zkrdtm
