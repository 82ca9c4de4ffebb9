// Region-count bounds: the non-adaptive separation-bound estimates and the
// adaptive continuous-amortization integrals.

#ifndef DDSUB_COMPLEXITY_HPP
#define DDSUB_COMPLEXITY_HPP

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include "ddsub/interval.hpp"
#include "ddsub/logscalar.hpp"
#include "ddsub/oracle.hpp"
#include "ddsub/poly.hpp"
#include "ddsub/predicates.hpp"

namespace ddsub {

// ---------------------------------------------------------------------------
// Non-adaptive bounds

/// max{1, eps1^(-1 + (ln diam - ln(K delta)) / ln eps2)}, for 0 < eps1, eps2 < 1.
LogScalar generic_region_bound(const LogScalar& diamI, double K, const LogScalar& delta, double eps1, double eps2);

/// max{1, (2 diam / (K delta))^n} with K = min(K0, K1) rounded down.
LogScalar pv_region_bound(unsigned n, unsigned d, const LogScalar& diamI, const LogScalar& delta);

/// log2 of the lower bound on the distance from V(f^Delta, g) to I^Delta.
/// Throws std::domain_error for d < 2, where the bound is vacuous.
double separation_distance_log2(unsigned n, unsigned d, double H);

/// Smallest k with sqrt(n) / 2^(k-1) strictly below that distance.
long separation_k(unsigned n, unsigned d, double H);

/// log2 of the resulting lower bound on delta, including the 1/sqrt(2) from
/// comparing distances in C^n and on the diagonal of C^2n.
double separation_delta_log2(unsigned n, unsigned d, double H, long k);

struct DeltaSearch {
  /// Certified lower end: min over surviving cells of the Lipschitz bound.
  double lower = 0;
  /// Smallest sampled value of max(dist0, dist1).
  double upper = 0;
  std::size_t cells = 0;
};

/// Branch-and-bound minimization of max(dist0(x), dist1(x)) over I.
DeltaSearch minimize_separation(const Box& I, const DistanceOracle& d0, const DistanceOracle& d1,
                                double rel_tol = 1e-3, std::size_t max_cells = 400000);

// ---------------------------------------------------------------------------
// Local size bounds

double local_size_G0(std::span<const double> x, unsigned n, unsigned d, const DistanceOracle& oracle);
double local_size_G1(std::span<const double> x, unsigned n, unsigned d, const DistanceOracle& oracle);

/// eps1^(1 + (ln(K dist) - ln diam) / ln eps2) * mu(I); 0 when dist = 0.
double generic_local_size_F(double K, double dist, double diamI, double eps1, double eps2, double muI);

// ---------------------------------------------------------------------------
// Bit-cost weights (k0 = k1 = 1)

double bit_cost_h0(double y, unsigned n, unsigned d, double tau, double wI);
double bit_cost_h1(double y, unsigned n, unsigned d, double tau, double wI);

// ---------------------------------------------------------------------------
// Continuous-amortization integrals

struct CAConfig {
  /// A cell is accepted once its children change its contribution by at most this fraction.
  double tolerance = 0.01;
  unsigned max_depth = 30;
  std::size_t max_cells = std::size_t{1} << 21;
};

struct CAEstimate {
  /// Midpoint-rule value of the integral with the outer max applied. A lower
  /// estimate only when diverged.
  double value = 0;
  /// Sum of per-cell suprema from Lipschitz distance bounds; +inf while a cell
  /// may touch the common zero locus.
  double upper = 0;
  unsigned refinement_depth = 0;
  bool diverged = false;
  /// Every cell converged before a cap was reached.
  bool converged = false;
  std::size_t cells_evaluated = 0;
  std::size_t unbounded_cells = 0;
};

/// Per-point integrand weights h(2^-n G) / G. The region integral uses h = 1.
using BitWeight = std::function<double(double y)>;

/// 2^n * integral over I of min_i h_i(2^-n G_i) / G_i, each G_i capped at
/// mu(I) and the integrand floored at 1, then maxed with h_i(mu(I)).
CAEstimate ca_integral(const Box& I, unsigned d, const DistanceOracle& o0, const DistanceOracle& o1,
                       const BitWeight& h0, const BitWeight& h1, const CAConfig& cfg);

CAEstimate ca_region_integral(const MultiPoly& f, const Box& I, const DistanceOracle& o0, const DistanceOracle& o1,
                              const CAConfig& cfg);

/// tau is the coefficient bit size used by the h weights.
CAEstimate ca_bit_integral(const MultiPoly& f, const Box& I, const DistanceOracle& o0, const DistanceOracle& o1,
                           double tau, const CAConfig& cfg);

// ---------------------------------------------------------------------------
// Lower bounds for the benchmark families

/// Regions meeting {(x, 0) : r1 <= x <= r2} for x1^a1 x2^a2 - eps^(a1+a2).
double family_lower_bound_example62(double a1, double a2, double eps, double r1, double r2);

/// w^(n-1) * a^(d/2+1) / 2 for the product of x^d - 2(ax-1)^2 and x^d - (ax-1)^2.
double mignotte_lower_bound(unsigned n, unsigned d, double a, double w);

// ---------------------------------------------------------------------------
// Reports

enum class BoundMode { Rigorous, Oracle };

struct BoundReport {
  BoundMode mode = BoundMode::Oracle;
  PredicateConstants constants;
  std::string delta_source;
  LogScalar delta;
  LogScalar region_bound;
  /// Rigorous mode only.
  std::optional<long> k;
  double height = 0;
  bool vacuous = false;
};

/// Rigorous mode clears denominators, takes H as the larger of the
/// coefficient height and the ceiling of the largest corner coordinate, and
/// uses the separation formulas. Oracle mode minimizes over I with d0, d1.
BoundReport bound_report(const MultiPoly& f, const Box& I, BoundMode mode, const DistanceOracle* d0,
                         const DistanceOracle* d1);

void write_bound_report(std::ostream& out, const BoundReport& r);

/// Diameter sqrt(n) * width as a LogScalar.
LogScalar box_diameter(const Box& I);

}  // namespace ddsub

#endif  // DDSUB_COMPLEXITY_HPP
