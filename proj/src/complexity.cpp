#include "ddsub/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <vector>

namespace ddsub {

namespace {

using Float = LogScalar::Float;
constexpr double kInf = std::numeric_limits<double>::infinity();

Float flog2(const Float& x) { return boost::multiprecision::log(x) / boost::multiprecision::log(Float(2)); }

double pairwise_sum(std::span<const double> v) {
  if (v.empty()) return 0.0;
  if (v.size() == 1) return v[0];
  const std::size_t mid = v.size() / 2;
  return pairwise_sum(v.first(mid)) + pairwise_sum(v.subspan(mid));
}

std::vector<double> centre_of(const Box& I) {
  std::vector<double> c;
  for (const auto& x : I.center()) c.push_back(x.to_double());
  return c;
}

}  // namespace

LogScalar box_diameter(const Box& I) {
  return LogScalar::from_double(std::sqrt(static_cast<double>(I.nvars()))) *
         LogScalar::from_double(I.width().to_double());
}

LogScalar generic_region_bound(const LogScalar& diamI, double K, const LogScalar& delta, double eps1, double eps2) {
  if (!(eps1 > 0 && eps1 < 1 && eps2 > 0 && eps2 < 1)) throw std::invalid_argument("need 0 < eps1, eps2 < 1");
  if (!(K > 0) || delta.sign() <= 0 || diamI.sign() <= 0) throw std::invalid_argument("need K, delta, diam > 0");
  const Float ratio = diamI.log2() - (flog2(Float(K)) + delta.log2());  // log2(diam / (K delta))
  const Float exponent = -1 + ratio / flog2(Float(eps2));
  const Float l = exponent * flog2(Float(eps1));
  return LogScalar::from_log2(l > 0 ? l : Float(0));
}

LogScalar pv_region_bound(unsigned n, unsigned d, const LogScalar& diamI, const LogScalar& delta) {
  if (delta.sign() <= 0) throw std::invalid_argument("pv_region_bound: delta must be positive");
  const double K = predicate_constants(n, d).K.lower;
  const Float l = n * (1 + diamI.log2() - flog2(Float(K)) - delta.log2());
  return LogScalar::from_log2(l > 0 ? l : Float(0));
}

double separation_distance_log2(unsigned n, unsigned d, double H) {
  if (d < 2) throw std::domain_error("separation bound is vacuous for degree < 2");
  if (!(H >= 1)) throw std::invalid_argument("height must be at least 1");
  const Float b = 2.0 * d - 2;
  const Float E = Float(2 * n) * boost::multiprecision::pow(Float(2), 4 * n) * boost::multiprecision::pow(b, 4 * n);
  const Float big = Float(2 * d - 2) + flog2(Float(n) * d * d * H * H);
  const Float inner = Float(4) - 2 * n + std::max(big, flog2(Float(32 * n + 8))) + 4 * n * flog2(b);
  return Float(-E * inner).convert_to<double>();
}

long separation_k(unsigned n, unsigned d, double H) {
  const Float D = separation_distance_log2(n, d, H);
  const Float k = boost::multiprecision::floor(Float(0.5) * flog2(Float(n)) - D) + 2;
  return std::max(1L, k.convert_to<long>());
}

double separation_delta_log2(unsigned n, unsigned d, double H, long k) {
  if (d < 2) throw std::domain_error("separation bound is vacuous for degree < 2");
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (!(H >= 1)) throw std::invalid_argument("height must be at least 1");
  const Float b = 2.0 * d - 2;
  const Float E = Float(4 * n) * boost::multiprecision::pow(Float(2), 8 * n) * boost::multiprecision::pow(b, 8 * n);
  const Float big = Float(2 * d - 2) * (k + 1) + flog2(Float(n) * d * d * H * H);
  const Float inner = Float(4) - 4 * n + std::max(big, flog2(Float(60 * n + 8))) + 8 * n * flog2(b);
  return Float(Float(-0.5) - (k + 1) - E * inner).convert_to<double>();
}

DeltaSearch minimize_separation(const Box& I, const DistanceOracle& d0, const DistanceOracle& d1, double rel_tol,
                                std::size_t max_cells) {
  const std::size_t n = I.nvars();
  if (d0.nvars != n || d1.nvars != n) throw std::invalid_argument("minimize_separation: dimension mismatch");
  struct Cell {
    std::vector<double> c;
    double h;
    double lb;
  };
  auto cmp = [](const Cell& a, const Cell& b) { return a.lb > b.lb; };
  std::priority_queue<Cell, std::vector<Cell>, decltype(cmp)> heap(cmp);
  DeltaSearch out;
  out.upper = kInf;
  const double sn = std::sqrt(static_cast<double>(n));
  auto push = [&](std::vector<double> c, double h) {
    const double a = d0(c), b = d1(c);
    out.upper = std::min(out.upper, std::max(a, b));
    const double rho = sn * h;
    const double lb = std::max({0.0, a - d0.lipschitz * rho, b - d1.lipschitz * rho});
    heap.push({std::move(c), h, lb});
    ++out.cells;
  };
  push(centre_of(I), I.halfwidth().to_double());
  while (true) {
    Cell top = heap.top();
    if (top.lb >= out.upper * (1 - rel_tol) || out.cells + (std::size_t{1} << n) > max_cells) {
      out.lower = std::min(top.lb, out.upper);
      return out;
    }
    heap.pop();
    const double h = top.h / 2;
    for (std::size_t k = 0; k < (std::size_t{1} << n); ++k) {
      std::vector<double> c = top.c;
      for (std::size_t i = 0; i < n; ++i) c[i] += ((k >> i) & 1U) ? h : -h;
      push(std::move(c), h);
    }
  }
}

double local_size_G0(std::span<const double> x, unsigned n, unsigned d, const DistanceOracle& oracle) {
  const double w = predicate_constants(n, d).width0.lower * oracle(x);
  return std::pow(w, static_cast<double>(n));
}

double local_size_G1(std::span<const double> x, unsigned n, unsigned d, const DistanceOracle& oracle) {
  const double w = predicate_constants(n, d).width1.lower * oracle(x);
  return std::pow(w, static_cast<double>(n));
}

double generic_local_size_F(double K, double dist, double diamI, double eps1, double eps2, double muI) {
  if (!(eps1 > 0 && eps1 < 1 && eps2 > 0 && eps2 < 1)) throw std::invalid_argument("need 0 < eps1, eps2 < 1");
  if (!(K > 0 && diamI > 0 && muI > 0) || dist < 0) throw std::invalid_argument("invalid local size arguments");
  if (dist == 0) return 0.0;
  const double e = 1 + (std::log(K * dist) - std::log(diamI)) / std::log(eps2);
  return std::pow(eps1, e) * muI;
}

double bit_cost_h0(double y, unsigned n, unsigned d, double tau, double wI) {
  if (!(y > 0)) throw std::invalid_argument("bit_cost_h0: y must be positive");
  const double dn = std::pow(d, static_cast<double>(n));
  return dn * d * std::log2(wI) - dn * d / n * std::log2(y) + dn * tau;
}

double bit_cost_h1(double y, unsigned n, unsigned d, double tau, double wI) {
  if (!(y > 0)) throw std::invalid_argument("bit_cost_h1: y must be positive");
  const double c = std::pow(2.0, 2.0 * n) * std::pow(d, 2.0 * n);
  return c * d * std::log2(wI) - c * d / n * std::log2(y) + c * tau;
}

CAEstimate ca_integral(const Box& I, unsigned d, const DistanceOracle& o0, const DistanceOracle& o1,
                       const BitWeight& h0, const BitWeight& h1, const CAConfig& cfg) {
  const std::size_t n = I.nvars();
  if (o0.nvars != n || o1.nvars != n) throw std::invalid_argument("ca_integral: dimension mismatch");
  const PredicateConstants pc = predicate_constants(static_cast<unsigned>(n), std::max(d, 1U));
  const double w0 = pc.width0.lower, w1 = pc.width1.lower;
  const double mu = I.measure().get_d();
  const double scale = std::ldexp(1.0, static_cast<int>(n));
  const double sn = std::sqrt(static_cast<double>(n));
  const std::size_t nkids = std::size_t{1} << n;

  auto term = [&](double w, double dist, const BitWeight& h) {
    if (!(dist > 0)) return kInf;
    const double G = std::min(std::pow(w * dist, static_cast<double>(n)), mu);
    return h(G / scale) / G;
  };
  auto integrand = [&](double a, double b) {
    const double v = scale * std::min(term(w0, a, h0), term(w1, b, h1));
    return std::max(1.0, v);
  };

  struct Cell {
    std::vector<double> c;
    double h;
    double mid;  // contribution: integrand * volume
    double up;
  };
  CAEstimate est;
  auto make = [&](std::vector<double> c, double h) {
    const double a = o0(c), b = o1(c);
    const double rho = sn * h;
    const double vol = std::pow(2 * h, static_cast<double>(n));
    const double la = std::max(0.0, a - o0.lipschitz * rho);
    const double lb = std::max(0.0, b - o1.lipschitz * rho);
    ++est.cells_evaluated;
    return Cell{std::move(c), h, integrand(a, b) * vol, integrand(la, lb) * vol};
  };

  std::vector<Cell> done;
  std::vector<Cell> active;
  active.push_back(make(centre_of(I), I.halfwidth().to_double()));

  auto total = [&](bool upper) {
    std::vector<double> v;
    for (const auto* set : {&done, &active})
      for (const auto& c : *set) {
        const double x = upper ? c.up : c.mid;
        if (upper || std::isfinite(x)) v.push_back(x);
      }
    return pairwise_sum(v);
  };

  std::vector<double> totals{total(false)};
  while (!active.empty() && est.refinement_depth < cfg.max_depth &&
         est.cells_evaluated + active.size() * nkids <= cfg.max_cells) {
    ++est.refinement_depth;
    std::vector<Cell> next;
    for (auto& cell : active) {
      std::vector<Cell> kids;
      const double h = cell.h / 2;
      for (std::size_t k = 0; k < nkids; ++k) {
        std::vector<double> c = cell.c;
        for (std::size_t i = 0; i < n; ++i) c[i] += ((k >> i) & 1U) ? h : -h;
        kids.push_back(make(std::move(c), h));
      }
      bool settled = std::isfinite(cell.up) && std::isfinite(cell.mid);
      double sum = 0;
      for (const auto& k : kids) {
        settled = settled && std::isfinite(k.up) && std::isfinite(k.mid);
        sum += k.mid;
      }
      // either the cell itself is resolved, or its change is below its area share of the global tolerance
      const double share = totals.back() * std::pow(2 * cell.h, static_cast<double>(n)) / mu;
      settled = settled && std::fabs(sum - cell.mid) <= cfg.tolerance * std::max({sum, cell.mid, share});
      auto& dest = settled ? done : next;
      for (auto& k : kids) dest.push_back(std::move(k));
    }
    active = std::move(next);
    totals.push_back(total(false));
  }

  for (const auto& c : active)
    if (!std::isfinite(c.up)) ++est.unbounded_cells;
  est.converged = active.empty();
  if (est.unbounded_cells > 0 && totals.size() >= 3) {
    // a singular point whose contribution keeps growing at a steady rate per
    // halving of the cell size: the integral is logarithmically or worse divergent
    const double last = totals[totals.size() - 1] - totals[totals.size() - 2];
    const double prev = totals[totals.size() - 2] - totals[totals.size() - 3];
    est.diverged = last > 0 && last >= 0.5 * prev;
  }
  const double floor = std::max({1.0, h0(mu), h1(mu)});
  est.value = std::max(floor, totals.back());
  est.upper = std::max(floor, total(true));
  return est;
}

CAEstimate ca_region_integral(const MultiPoly& f, const Box& I, const DistanceOracle& o0, const DistanceOracle& o1,
                              const CAConfig& cfg) {
  if (f.nvars() != I.nvars()) throw std::invalid_argument("ca_region_integral: dimension mismatch");
  const BitWeight one = [](double) { return 1.0; };
  return ca_integral(I, f.degree(), o0, o1, one, one, cfg);
}

CAEstimate ca_bit_integral(const MultiPoly& f, const Box& I, const DistanceOracle& o0, const DistanceOracle& o1,
                           double tau, const CAConfig& cfg) {
  if (f.nvars() != I.nvars()) throw std::invalid_argument("ca_bit_integral: dimension mismatch");
  const unsigned n = static_cast<unsigned>(f.nvars());
  const unsigned d = std::max(f.degree(), 1U);
  const double w = I.width().to_double();
  const BitWeight h0 = [=](double y) { return bit_cost_h0(y, n, d, tau, w); };
  const BitWeight h1 = [=](double y) { return bit_cost_h1(y, n, d, tau, w); };
  return ca_integral(I, d, o0, o1, h0, h1, cfg);
}

double family_lower_bound_example62(double a1, double a2, double eps, double r1, double r2) {
  if (!(a1 > 0 && a2 > 0 && eps > 0 && r1 > 0 && r2 >= r1)) throw std::invalid_argument("need 0 < r1 <= r2, eps > 0");
  const double p = (a1 + a2) / a2;
  return a2 / (2 * (a1 + a2)) * (std::pow(r2 / eps, p) - std::pow(r1 / eps, p));
}

double mignotte_lower_bound(unsigned n, unsigned d, double a, double w) {
  if (n < 1 || d < 3 || !(a >= 2) || !(w > 0)) throw std::invalid_argument("need n >= 1, d >= 3, a >= 2, w > 0");
  return std::pow(w, n - 1.0) * std::pow(a, d / 2.0 + 1) / 2;
}

BoundReport bound_report(const MultiPoly& f, const Box& I, BoundMode mode, const DistanceOracle* d0,
                         const DistanceOracle* d1) {
  if (f.is_zero()) throw std::invalid_argument("bound_report: zero polynomial");
  if (f.nvars() != I.nvars()) throw std::invalid_argument("bound_report: dimension mismatch");
  const unsigned n = static_cast<unsigned>(f.nvars());
  const unsigned d = f.degree();
  BoundReport r;
  r.mode = mode;
  r.region_bound = LogScalar::one();
  if (d == 0) {
    r.vacuous = true;
    r.delta_source = "constant polynomial";
    return r;
  }
  r.constants = predicate_constants(n, d);
  const LogScalar diam = box_diameter(I);

  if (mode == BoundMode::Rigorous) {
    const CoeffStats cs = coeff_stats(clear_denominators(f));
    double H = std::max(1.0, cs.height.get_d());
    for (std::size_t i = 0; i < n; ++i) {
      H = std::max(H, std::ceil(std::fabs(I.lower(i).to_double())));
      H = std::max(H, std::ceil(std::fabs(I.upper(i).to_double())));
    }
    r.height = H;
    if (d == 1) {
      // g is a nonzero constant, so dist((x,x), V(g)) is infinite
      r.vacuous = true;
      r.delta_source = "separation formulas (vacuous for degree 1)";
      return r;
    }
    r.k = separation_k(n, d, H);
    r.delta = LogScalar::from_log2(Float(separation_delta_log2(n, d, H, *r.k)));
    r.delta_source = "separation formulas";
  } else {
    if (!d0 || !d1) throw std::invalid_argument("bound_report: oracle mode needs both distance oracles");
    const DeltaSearch s = minimize_separation(I, *d0, *d1);
    r.delta_source = "oracle minimization (" + d0->label + ", " + d1->label + ")";
    if (!(s.lower > 0)) {
      r.delta = LogScalar();
      r.region_bound = LogScalar::from_log2(std::numeric_limits<Float>::infinity());
      return r;
    }
    r.delta = LogScalar::from_double(s.lower);
  }
  r.region_bound = pv_region_bound(n, d, diam, r.delta);
  return r;
}

void write_bound_report(std::ostream& out, const BoundReport& r) {
  const auto old = out.flags();
  const auto prec = out.precision();
  out << std::setprecision(12);
  out << "mode: " << (r.mode == BoundMode::Rigorous ? "rigorous" : "oracle") << '\n';
  if (r.constants.n > 0) {
    out << "K0: [" << r.constants.K0.lower << ", " << r.constants.K0.upper << "]\n";
    out << "K1: [" << r.constants.K1.lower << ", " << r.constants.K1.upper << "]\n";
    out << "K: [" << r.constants.K.lower << ", " << r.constants.K.upper << "]\n";
  }
  out << "delta_source: " << r.delta_source << '\n';
  if (r.k) out << "k: " << *r.k << '\n';
  if (r.height > 0) out << "H: " << r.height << '\n';
  out << "log2_delta: " << (r.delta.is_zero() ? std::string("-inf") : r.delta.log2().str(15)) << '\n';
  out << "vacuous: " << (r.vacuous ? "true" : "false") << '\n';
  out << "log2_region_bound: " << r.region_bound.log2().str(15) << '\n';
  out.flags(old);
  out.precision(prec);
}

}  // namespace ddsub
