// The C0 exclusion test, the gradient-pairing C1 test, and the
// diameter-distance constants attached to them.

#ifndef DDSUB_PREDICATES_HPP
#define DDSUB_PREDICATES_HPP

#include <optional>

#include "ddsub/interval.hpp"
#include "ddsub/poly.hpp"

namespace ddsub {

struct TestResult {
  bool passed = false;
  IntervalR enclosure;
};

/// True iff 0 is not in the centered form of f on J. A pass proves f has
/// no zero in J.
TestResult c0_test(const MultiPoly& f, const Box& J);

/// True iff 0 is not in the centered form of g on J x J, where
/// g = gradient_pair(f). A pass proves no two gradients of f in J are
/// orthogonal.
TestResult c1_test(const MultiPoly& g, const Box& J);

/// Evaluates the explicit normalized C1 inequality from the derivatives of
/// f at the center of J. Returns false when grad f(m) = 0.
bool c1_inequality_direct(const MultiPoly& f, const Box& J);

enum class PredicateTag { C0, C1, Neither };

struct PredicateOutcome {
  PredicateTag tag = PredicateTag::Neither;
  IntervalR enclosure0;
  /// Absent when C0 passed and C1 was skipped.
  std::optional<IntervalR> enclosure1;
};

/// C0 then C1 on polynomials already shifted to the cube center.
PredicateOutcome evaluate_shifted(const MultiPoly& f_shifted, const MultiPoly& g_shifted,
                                  const Dyadic& halfwidth);

/// A transcendental constant bracketed by directed rounding.
struct Bracket {
  double lower = 0;
  double upper = 0;
};

/// Diameter-distance constants for dimension n and degree d. Evaluated with
/// 256-bit MPFR arithmetic; `lower` is rounded toward zero and is the value
/// used wherever a sufficiency claim depends on it.
struct PredicateConstants {
  unsigned n = 0;
  unsigned d = 0;
  Bracket K0;  // C0: diam(J) <= K0 * dist_C(x, f) forces a pass
  Bracket K1;  // C1: diam(J) <= K1 * dist_C((x,x), g) forces a pass
  Bracket K;   // min(K0, K1)
  Bracket width0;  // K0 / sqrt(n): same statement for the width of J
  Bracket width1;  // K1 / sqrt(n)
};

PredicateConstants predicate_constants(unsigned n, unsigned d);

/// Width below which any cube containing a point at complex distance >= dist
/// from V(f) passes C0. Rounded down.
double sufficient_width_c0(unsigned n, unsigned d, double dist);

/// Width below which any cube containing a point (a, b) of J x J at complex
/// distance >= dist from V(g) passes C1. Rounded down.
double sufficient_width_c1(unsigned n, unsigned d, double dist);

}  // namespace ddsub

#endif  // DDSUB_PREDICATES_HPP
