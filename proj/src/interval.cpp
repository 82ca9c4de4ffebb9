#include "ddsub/interval.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ddsub {

IntervalR::IntervalR(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_ > hi_) throw std::invalid_argument("interval with lo > hi");
}

std::string IntervalR::str() const { return "[" + to_string(lo_) + ", " + to_string(hi_) + "]"; }

IntervalR operator+(const IntervalR& a, const IntervalR& b) {
  return IntervalR(a.lo_ + b.lo_, a.hi_ + b.hi_);
}

IntervalR operator-(const IntervalR& a, const IntervalR& b) {
  return IntervalR(a.lo_ - b.hi_, a.hi_ - b.lo_);
}

IntervalR operator*(const IntervalR& a, const IntervalR& b) {
  const Rational p[4] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
  return IntervalR(*std::min_element(p, p + 4), *std::max_element(p, p + 4));
}

IntervalR operator-(const IntervalR& a) { return IntervalR(-a.hi_, -a.lo_); }

IntervalR operator*(const Rational& c, const IntervalR& a) {
  if (c >= 0) return IntervalR(c * a.lo_, c * a.hi_);
  return IntervalR(c * a.hi_, c * a.lo_);
}

IntervalR operator+(const Rational& c, const IntervalR& a) { return IntervalR(c + a.lo_, c + a.hi_); }

// ---------------------------------------------------------------------------

Box::Box(std::vector<Dyadic> center, Dyadic halfwidth)
    : center_(std::move(center)), halfwidth_(std::move(halfwidth)) {
  if (center_.empty()) throw std::invalid_argument("box needs at least one dimension");
  if (halfwidth_.sign() <= 0) throw std::invalid_argument("box half-width must be positive");
}

Box Box::cube(std::size_t nvars, const Dyadic& center_coord, const Dyadic& halfwidth) {
  return Box(std::vector<Dyadic>(nvars, center_coord), halfwidth);
}

Rational Box::measure() const {
  const Rational w = width().to_rational();
  Rational m(1);
  for (std::size_t i = 0; i < nvars(); ++i) m *= w;
  return m;
}

bool Box::contains(std::span<const Rational> point) const {
  if (point.size() != nvars()) throw std::invalid_argument("Box::contains: dimension mismatch");
  for (std::size_t i = 0; i < nvars(); ++i) {
    if (point[i] < lower(i).to_rational() || point[i] > upper(i).to_rational()) return false;
  }
  return true;
}

bool Box::contains(std::span<const double> point) const {
  if (point.size() != nvars()) throw std::invalid_argument("Box::contains: dimension mismatch");
  for (std::size_t i = 0; i < nvars(); ++i) {
    const Dyadic x = Dyadic::from_double(point[i]);
    if (x < lower(i) || x > upper(i)) return false;
  }
  return true;
}

std::string Box::str() const {
  std::ostringstream out;
  out << "center=(";
  for (std::size_t i = 0; i < center_.size(); ++i) out << (i ? "," : "") << to_string(center_[i].to_rational());
  out << ") halfwidth=" << to_string(halfwidth_.to_rational());
  return out.str();
}

// ---------------------------------------------------------------------------

IntervalR centered_form_shifted(const MultiPoly& shifted, const Dyadic& halfwidth) {
  const Rational r = halfwidth.to_rational();
  const unsigned d = shifted.degree();
  std::vector<Rational> rpow(d + 1);
  rpow[0] = 1;
  for (unsigned k = 1; k <= d; ++k) rpow[k] = rpow[k - 1] * r;
  Rational center(0), radius(0);
  for (const auto& [alpha, c] : shifted.terms()) {
    const unsigned k = total_degree(alpha);
    if (k == 0) center = c;
    else radius += abs(c) * rpow[k];
  }
  return IntervalR(center - radius, center + radius);
}

IntervalR centered_form(const MultiPoly& f, const Box& J) {
  if (f.nvars() != J.nvars()) throw std::invalid_argument("centered_form: dimension mismatch");
  return centered_form_shifted(taylor_shift(f, std::span<const Dyadic>(J.center())), J.halfwidth());
}

std::vector<Dyadic> doubled_center(const Box& J) {
  std::vector<Dyadic> c = J.center();
  c.insert(c.end(), J.center().begin(), J.center().end());
  return c;
}

IntervalR centered_form_doubled(const MultiPoly& g, const Box& J) {
  if (g.nvars() != 2 * J.nvars()) throw std::invalid_argument("centered_form_doubled: dimension mismatch");
  const std::vector<Dyadic> c = doubled_center(J);
  return centered_form_shifted(taylor_shift(g, std::span<const Dyadic>(c)), J.halfwidth());
}

}  // namespace ddsub
