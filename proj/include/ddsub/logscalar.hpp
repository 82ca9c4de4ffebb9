// Signed numbers stored as a base-2 logarithm of the magnitude, for bound
// values far outside the double range.

#ifndef DDSUB_LOGSCALAR_HPP
#define DDSUB_LOGSCALAR_HPP

#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace ddsub {

class LogScalar {
 public:
  using Float = boost::multiprecision::cpp_bin_float_50;

  /// Zero.
  LogScalar() = default;
  static LogScalar from_double(double x);
  static LogScalar from_log2(const Float& log2_magnitude, int sign = 1);
  static LogScalar one() { return from_log2(Float(0)); }

  int sign() const { return sign_; }
  bool is_zero() const { return sign_ == 0; }
  /// log2 |x|; -inf for zero.
  Float log2() const;
  double log2_double() const;
  /// Nearest double; +-inf or 0 outside the double range.
  double to_double() const;
  /// Accumulated bound on the absolute error of log2(), in units of log2.
  double log2_error() const { return error_; }

  friend LogScalar operator*(const LogScalar& a, const LogScalar& b);
  friend LogScalar operator/(const LogScalar& a, const LogScalar& b);
  friend LogScalar operator+(const LogScalar& a, const LogScalar& b);
  friend LogScalar operator-(const LogScalar& a) { return LogScalar(a.log2_, -a.sign_, a.error_); }
  friend LogScalar operator-(const LogScalar& a, const LogScalar& b) { return a + (-b); }
  friend bool operator<(const LogScalar& a, const LogScalar& b);
  friend bool operator==(const LogScalar& a, const LogScalar& b);

  /// x^e for x >= 0; throws for negative x.
  LogScalar pow(const Float& e) const;
  std::string str() const;

 private:
  LogScalar(Float l, int s, double err) : log2_(std::move(l)), sign_(s), error_(err) {}
  Float log2_{0};
  int sign_ = 0;
  double error_ = 0;
};

LogScalar max(const LogScalar& a, const LogScalar& b);

}  // namespace ddsub

#endif  // DDSUB_LOGSCALAR_HPP
