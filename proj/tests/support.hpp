// Random instances shared by the unit tests and the acceptance binary.

#ifndef DDSUB_TESTS_SUPPORT_HPP
#define DDSUB_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "ddsub/interval.hpp"
#include "ddsub/numeric.hpp"
#include "ddsub/poly.hpp"

namespace ddsub::testing {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

/// p/q with |p| <= 9, 1 <= q <= 8.
inline Rational small_rational(Rng& rng) {
  Rational q(uniform(rng, -9, 9), uniform(rng, 1, 8));
  q.canonicalize();
  return q;
}

/// m * 2^-k with |m| < 2^bits.
inline Dyadic small_dyadic(Rng& rng, long bits = 6, long max_k = 6) {
  const long lim = (1L << bits) - 1;
  return Dyadic(Integer(uniform(rng, -lim, lim)), -uniform(rng, 0, max_k));
}

inline MultiPoly random_poly(Rng& rng, std::size_t n, unsigned d, std::size_t max_terms = 8) {
  MultiPoly p(n);
  const std::size_t terms = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(max_terms)));
  for (std::size_t t = 0; t < terms; ++t) {
    Exponent alpha(n, 0);
    long budget = uniform(rng, 0, d);
    for (std::size_t i = 0; i < n && budget > 0; ++i) {
      const long e = (i + 1 == n) ? budget : uniform(rng, 0, budget);
      alpha[i] = static_cast<unsigned>(e);
      budget -= e;
    }
    std::shuffle(alpha.begin(), alpha.end(), rng);
    p.add_term(alpha, small_rational(rng));
  }
  return p;
}

inline Box random_box(Rng& rng, std::size_t n) {
  std::vector<Dyadic> c;
  for (std::size_t i = 0; i < n; ++i) c.push_back(small_dyadic(rng));
  Dyadic h(Integer(uniform(rng, 1, 15)), -uniform(rng, 0, 8));
  return Box(std::move(c), h);
}

/// Exact rational point of J: center + t * halfwidth with t in [-1, 1] on a 1/64 grid.
inline std::vector<Rational> random_point_in(Rng& rng, const Box& J) {
  std::vector<Rational> p;
  for (std::size_t i = 0; i < J.nvars(); ++i) {
    Rational t(uniform(rng, -64, 64), 64);
    t.canonicalize();
    p.push_back(J.center()[i].to_rational() + t * J.halfwidth().to_rational());
  }
  return p;
}

/// Largest dyadic m * 2^-30 not above x (x >= 0).
inline Dyadic dyadic_floor(double x) {
  return Dyadic(Integer(static_cast<long>(std::floor(std::ldexp(x, 30)))), -30);
}

/// A cube of half-width at most width / 2 containing the dyadic point x at a
/// random relative offset. The half-width may be zero when width is tiny.
inline std::optional<Box> box_around(Rng& rng, const std::vector<Dyadic>& x, double width) {
  const Dyadic h = dyadic_floor(width / 2);
  if (h.is_zero()) return std::nullopt;
  std::vector<Dyadic> c;
  for (const auto& xi : x) c.push_back(xi - h * Dyadic(Integer(uniform(rng, -8, 8)), -3));
  return Box(std::move(c), h);
}

}  // namespace ddsub::testing

#endif  // DDSUB_TESTS_SUPPORT_HPP
