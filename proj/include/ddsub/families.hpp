// Benchmark polynomial families and the counts compared against their
// lower bounds.

#ifndef DDSUB_FAMILIES_HPP
#define DDSUB_FAMILIES_HPP

#include "ddsub/oracle.hpp"
#include "ddsub/poly.hpp"
#include "ddsub/subdivide.hpp"

namespace ddsub {

/// x1^2 + x2^2 + eps^2 (Plus) or x1^2 + x2^2 - eps^2 (Minus).
MultiPoly circle_poly(CircleVariant variant, const Rational& eps);

/// c * x1^4 * x2^4 - 1.
MultiPoly asymptote_poly(const Rational& c);

/// (x1^d - 2(a x1 - 1)^2)(x1^d - (a x1 - 1)^2) as a polynomial in two variables.
MultiPoly mignotte_poly(unsigned a, unsigned d);

/// ((x1-3)^2 + x2^2 - 1)((x1+3)^2 + x2^2 - 1), expanded.
MultiPoly two_circles_poly();

/// Terminal boxes J with J_y,lo <= 0 < J_y,hi whose x-range meets [r1, r2]:
/// the boxes tiling the segment {(x, 0) : r1 <= x <= r2} from the upper side.
std::size_t count_boxes_on_segment(const SubdivisionResult& r, const Rational& r1, const Rational& r2);

}  // namespace ddsub

#endif  // DDSUB_FAMILIES_HPP
