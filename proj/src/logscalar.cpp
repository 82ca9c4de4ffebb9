#include "ddsub/logscalar.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ddsub {

namespace {

using Float = LogScalar::Float;

// One rounding of a 50-digit operation, expressed in log2 units.
constexpr double kUlp = 1e-48;

Float log2_of(const Float& x) { return boost::multiprecision::log(x) / boost::multiprecision::log(Float(2)); }

}  // namespace

LogScalar LogScalar::from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("LogScalar: non-finite value");
  if (x == 0) return LogScalar();
  return LogScalar(log2_of(Float(std::fabs(x))), x > 0 ? 1 : -1, kUlp);
}

LogScalar LogScalar::from_log2(const Float& l, int sign) {
  if (sign == 0) return LogScalar();
  return LogScalar(l, sign > 0 ? 1 : -1, 0);
}

Float LogScalar::log2() const {
  if (sign_ == 0) return -std::numeric_limits<Float>::infinity();
  return log2_;
}

double LogScalar::log2_double() const {
  if (sign_ == 0) return -std::numeric_limits<double>::infinity();
  return log2_.convert_to<double>();
}

double LogScalar::to_double() const {
  if (sign_ == 0) return 0.0;
  const double l = log2_double();
  if (l > 1024) return sign_ * std::numeric_limits<double>::infinity();
  if (l < -1100) return 0.0 * sign_;
  return sign_ * boost::multiprecision::pow(Float(2), log2_).convert_to<double>();
}

LogScalar operator*(const LogScalar& a, const LogScalar& b) {
  if (a.is_zero() || b.is_zero()) return LogScalar();
  return LogScalar(a.log2_ + b.log2_, a.sign_ * b.sign_, a.error_ + b.error_ + kUlp);
}

LogScalar operator/(const LogScalar& a, const LogScalar& b) {
  if (b.is_zero()) throw std::domain_error("LogScalar: division by zero");
  if (a.is_zero()) return LogScalar();
  return LogScalar(a.log2_ - b.log2_, a.sign_ * b.sign_, a.error_ + b.error_ + kUlp);
}

LogScalar operator+(const LogScalar& a, const LogScalar& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const bool a_big = a.log2_ >= b.log2_;
  const LogScalar& hi = a_big ? a : b;
  const LogScalar& lo = a_big ? b : a;
  const Float t = boost::multiprecision::pow(Float(2), lo.log2_ - hi.log2_);  // in (0, 1]
  const double err = hi.error_ + lo.error_ + 4 * kUlp;
  if (hi.sign_ == lo.sign_) return LogScalar(hi.log2_ + log2_of(1 + t), hi.sign_, err);
  if (t == 1) return LogScalar();
  // cancellation amplifies the relative error by 1 / (1 - t)
  const Float rest = 1 - t;
  return LogScalar(hi.log2_ + log2_of(rest), hi.sign_, err / rest.convert_to<double>());
}

bool operator<(const LogScalar& a, const LogScalar& b) {
  if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
  if (a.sign_ == 0) return false;
  return a.sign_ > 0 ? a.log2_ < b.log2_ : a.log2_ > b.log2_;
}

bool operator==(const LogScalar& a, const LogScalar& b) {
  return a.sign_ == b.sign_ && (a.sign_ == 0 || a.log2_ == b.log2_);
}

LogScalar LogScalar::pow(const Float& e) const {
  if (sign_ < 0) throw std::domain_error("LogScalar::pow of a negative value");
  if (sign_ == 0) {
    if (e > 0) return LogScalar();
    if (e == 0) return one();
    throw std::domain_error("LogScalar::pow: zero to a negative power");
  }
  const double scale = boost::multiprecision::abs(e).convert_to<double>();
  return LogScalar(log2_ * e, 1, error_ * scale + kUlp);
}

std::string LogScalar::str() const {
  if (sign_ == 0) return "0";
  std::ostringstream out;
  out << (sign_ < 0 ? "-" : "") << "2^" << log2_.str(20);
  return out.str();
}

LogScalar max(const LogScalar& a, const LogScalar& b) { return a < b ? b : a; }

}  // namespace ddsub
