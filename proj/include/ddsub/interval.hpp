// Exact closed intervals, axis-aligned cubes, and the standard centered form.

#ifndef DDSUB_INTERVAL_HPP
#define DDSUB_INTERVAL_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ddsub/numeric.hpp"
#include "ddsub/poly.hpp"

namespace ddsub {

class IntervalR {
 public:
  IntervalR() = default;
  explicit IntervalR(const Rational& point) : lo_(point), hi_(point) {}
  IntervalR(Rational lo, Rational hi);

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }

  bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
  bool contains_zero() const { return lo_ <= 0 && 0 <= hi_; }
  bool subset_of(const IntervalR& other) const { return other.lo_ <= lo_ && hi_ <= other.hi_; }

  std::string str() const;

  friend IntervalR operator+(const IntervalR& a, const IntervalR& b);
  friend IntervalR operator-(const IntervalR& a, const IntervalR& b);
  friend IntervalR operator*(const IntervalR& a, const IntervalR& b);
  friend IntervalR operator-(const IntervalR& a);
  friend IntervalR operator*(const Rational& c, const IntervalR& a);
  friend IntervalR operator+(const Rational& c, const IntervalR& a);
  friend bool operator==(const IntervalR& a, const IntervalR& b) = default;

 private:
  Rational lo_{0};
  Rational hi_{0};
};

/// Axis-aligned n-cube with dyadic center and half-width. The diameter is
/// sqrt(n) * width and is never materialized as a rounded value.
class Box {
 public:
  Box(std::vector<Dyadic> center, Dyadic halfwidth);

  /// Cube [-r, r]^n shifted to `center`.
  static Box cube(std::size_t nvars, const Dyadic& center_coord, const Dyadic& halfwidth);

  std::size_t nvars() const { return center_.size(); }
  const std::vector<Dyadic>& center() const { return center_; }
  const Dyadic& halfwidth() const { return halfwidth_; }
  Dyadic width() const { return halfwidth_.twice(); }
  /// width^n, exact.
  Rational measure() const;

  Dyadic lower(std::size_t axis) const { return center_[axis] - halfwidth_; }
  Dyadic upper(std::size_t axis) const { return center_[axis] + halfwidth_; }

  bool contains(std::span<const Rational> point) const;
  bool contains(std::span<const double> point) const;

  std::string str() const;

  friend bool operator==(const Box& a, const Box& b) = default;

 private:
  std::vector<Dyadic> center_;
  Dyadic halfwidth_;
};

/// Centered form of a polynomial already shifted to the cube center:
/// q(0) + (sum_{alpha != 0} |q_alpha| r^{|alpha|}) [-1, 1] with r the
/// half-width. The coefficients q_alpha equal d^alpha f(m) / alpha!.
IntervalR centered_form_shifted(const MultiPoly& shifted, const Dyadic& halfwidth);

/// Standard centered form of f on J, computed exactly via a Taylor shift to
/// the center of J.
IntervalR centered_form(const MultiPoly& f, const Box& J);

/// Centered form of g (2n variables) on J x J: center (m, m), same half-width.
IntervalR centered_form_doubled(const MultiPoly& g, const Box& J);

/// (m, m) for a cube J with center m.
std::vector<Dyadic> doubled_center(const Box& J);

}  // namespace ddsub

#endif  // DDSUB_INTERVAL_HPP
