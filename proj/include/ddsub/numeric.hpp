// Exact scalar types: arbitrary-precision rationals and dyadic rationals.

#ifndef DDSUB_NUMERIC_HPP
#define DDSUB_NUMERIC_HPP

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace ddsub {

/// Canonical rational (gcd(num, den) = 1, den > 0). GMP keeps mpq_class
/// canonical after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
Rational abs(const Rational& q);

/// Number of bits of |z| (0 for zero).
std::size_t bit_length(const Integer& z);

/// ceil(lg q) for q > 0.
long ceil_log2(const Rational& q);

/// Exact value mantissa * 2^exponent with mantissa zero or odd.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(long value);  // NOLINT(google-explicit-constructor)
  Dyadic(Integer mantissa, long exponent);

  /// Every finite double is dyadic; the conversion is exact.
  static Dyadic from_double(double value);

  /// Accepts "m*2^e", an integer, a finite decimal with a power-of-two
  /// denominator ("0.375"), or a fraction "p/q" with q a power of two.
  static Dyadic parse(std::string_view text);

  /// Throws std::invalid_argument unless q has a power-of-two denominator.
  static Dyadic from_rational(const Rational& q);

  const Integer& mantissa() const { return mantissa_; }
  long exponent() const { return exponent_; }
  int sign() const { return sgn(mantissa_); }
  bool is_zero() const { return mantissa_ == 0; }

  Rational to_rational() const;
  double to_double() const;

  Dyadic half() const;
  Dyadic twice() const;

  /// Bits needed to write the value as an integer over 2^k:
  /// bit_length(mantissa) + max(0, -exponent).
  std::size_t bit_size() const;

  /// "m*2^e"; integers print as "m*2^0".
  std::string str() const;

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a);
  friend bool operator==(const Dyadic& a, const Dyadic& b) = default;
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

 private:
  void normalize();

  Integer mantissa_{0};
  long exponent_ = 0;
};

Dyadic abs(const Dyadic& x);

}  // namespace ddsub

#endif  // DDSUB_NUMERIC_HPP
