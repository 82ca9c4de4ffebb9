// Complex-distance oracles: closed forms for the circle families, a sound
// lower bound for any polynomial, and a sampled upper bound.

#ifndef DDSUB_ORACLE_HPP
#define DDSUB_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>

#include "ddsub/poly.hpp"

namespace ddsub {

enum class OracleMode {
  ClosedFormCirclePlus,
  ClosedFormCircleMinus,
  ClosedFormPairing,
  LowerBoundGeneric,
  UpperBoundDirectional,
};

const char* to_string(OracleMode m);

/// Distance from a real point x in R^n to a complex variety. Oracles for the
/// gradient pairing take x and measure from (x, x).
struct DistanceOracle {
  OracleMode mode = OracleMode::LowerBoundGeneric;
  std::size_t nvars = 0;
  std::string label;
  /// Lipschitz constant of the exact distance as a function of x: 1 for a
  /// variety in R^n, sqrt(2) when measured from (x, x).
  double lipschitz = 1.0;
  std::function<double(std::span<const double>)> eval;

  double operator()(std::span<const double> x) const { return eval(x); }
  /// True unless the oracle may overestimate the distance.
  bool is_lower_bound() const { return mode != OracleMode::UpperBoundDirectional; }
};

enum class CircleVariant { Plus, Minus };

/// For f = x1^2 + x2^2 + eps^2 (Plus) or x1^2 + x2^2 - eps^2 (Minus): the
/// distance to V(f) and the distance from (x, x) to V(g).
std::pair<DistanceOracle, DistanceOracle> circle_distance_oracles(CircleVariant variant, double eps);

/// min(r, |f(p)| / M) with M a bound on |grad f| over the complex polydisk
/// of radius r about p.
DistanceOracle generic_lower_oracle(const MultiPoly& f, double r);

/// The same bound for g = gradient_pair(f), evaluated at (x, x).
DistanceOracle generic_lower_pairing_oracle(const MultiPoly& f, double r);

/// Smallest |t| over complex roots t of f(p + t u), minimized over `samples`
/// random real unit directions u plus the coordinate axes. Never below the
/// true distance. +inf when f is constant on every sampled line.
DistanceOracle directional_upper_oracle(const MultiPoly& f, std::size_t samples, std::uint64_t seed);

/// Directional bound for g = gradient_pair(f) from (x, x).
DistanceOracle directional_upper_pairing_oracle(const MultiPoly& f, std::size_t samples, std::uint64_t seed);

}  // namespace ddsub

#endif  // DDSUB_ORACLE_HPP
