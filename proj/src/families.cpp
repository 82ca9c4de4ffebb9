#include "ddsub/families.hpp"

#include <stdexcept>

namespace ddsub {

namespace {

MultiPoly x(std::size_t i) { return MultiPoly::variable(2, i); }
MultiPoly k(const Rational& c) { return MultiPoly::constant(2, c); }

MultiPoly power(const MultiPoly& p, unsigned e) {
  MultiPoly r = k(1);
  for (unsigned i = 0; i < e; ++i) r = r * p;
  return r;
}

}  // namespace

MultiPoly circle_poly(CircleVariant variant, const Rational& eps) {
  if (eps <= 0) throw std::invalid_argument("circle_poly: eps must be positive");
  const Rational e2 = eps * eps;
  return x(0) * x(0) + x(1) * x(1) + k(variant == CircleVariant::Plus ? Rational(e2) : Rational(-e2));
}

MultiPoly asymptote_poly(const Rational& c) {
  if (c <= 0) throw std::invalid_argument("asymptote_poly: c must be positive");
  return power(x(0), 4) * power(x(1), 4) * c - k(1);
}

MultiPoly mignotte_poly(unsigned a, unsigned d) {
  const MultiPoly lin = x(0) * Rational(a) - k(1);
  const MultiPoly sq = lin * lin;
  const MultiPoly xd = power(x(0), d);
  return (xd - sq * Rational(2)) * (xd - sq);
}

MultiPoly two_circles_poly() {
  const MultiPoly y2 = x(1) * x(1);
  const MultiPoly a = x(0) - k(3), b = x(0) + k(3);
  return (a * a + y2 - k(1)) * (b * b + y2 - k(1));
}

std::size_t count_boxes_on_segment(const SubdivisionResult& r, const Rational& r1, const Rational& r2) {
  if (r.input.nvars() != 2) throw std::invalid_argument("count_boxes_on_segment: planar run required");
  std::size_t count = 0;
  for (const auto& t : r.terminal) {
    const Rational ylo = t.box.lower(1).to_rational(), yhi = t.box.upper(1).to_rational();
    if (!(ylo <= 0 && 0 < yhi)) continue;
    const Rational xlo = t.box.lower(0).to_rational(), xhi = t.box.upper(0).to_rational();
    if (xlo <= r2 && xhi >= r1) ++count;
  }
  return count;
}

}  // namespace ddsub
