#include "ddsub/oracle.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>
#include <unsupported/Eigen/Polynomials>

namespace ddsub {

const char* to_string(OracleMode m) {
  switch (m) {
    case OracleMode::ClosedFormCirclePlus: return "closed-form-circle-plus";
    case OracleMode::ClosedFormCircleMinus: return "closed-form-circle-minus";
    case OracleMode::ClosedFormPairing: return "closed-form-pairing";
    case OracleMode::LowerBoundGeneric: return "lower-bound-generic";
    case OracleMode::UpperBoundDirectional: return "upper-bound-directional";
  }
  return "?";
}

namespace {

void check_dim(std::span<const double> x, std::size_t n) {
  if (x.size() != n) throw std::invalid_argument("distance oracle: dimension mismatch");
}

std::vector<Dyadic> to_dyadic(std::span<const double> x, bool doubled) {
  std::vector<Dyadic> c;
  for (double v : x) c.push_back(Dyadic::from_double(v));
  if (doubled) {
    const std::vector<Dyadic> copy = c;
    c.insert(c.end(), copy.begin(), copy.end());
  }
  return c;
}

// Taylor coefficients of p at a floating-point point: q_alpha is the sum over
// beta >= alpha of c_beta * prod binom(beta_i, alpha_i) x_i^(beta_i - alpha_i).
class DoubleShift {
 public:
  explicit DoubleShift(const MultiPoly& p) : m_(p.nvars()) {
    std::set<Exponent> alphas;
    for (const auto& [beta, c] : p.terms()) {
      betas_.push_back(beta);
      coeffs_.push_back(c.get_d());
      maxdeg_ = std::max(maxdeg_, total_degree(beta));
      enumerate(beta, 0, beta, alphas);
    }
    alphas_.assign(alphas.begin(), alphas.end());
    links_.resize(alphas_.size());
    for (std::size_t a = 0; a < alphas_.size(); ++a) {
      for (std::size_t b = 0; b < betas_.size(); ++b) {
        double binom = 1;
        bool below = true;
        for (std::size_t i = 0; i < m_ && below; ++i) {
          if (alphas_[a][i] > betas_[b][i]) below = false;
          else binom *= choose(betas_[b][i], alphas_[a][i]);
        }
        if (below) links_[a].push_back({b, binom * coeffs_[b]});
      }
    }
  }

  const std::vector<Exponent>& alphas() const { return alphas_; }
  std::size_t nvars() const { return m_; }

  std::vector<double> at(std::span<const double> x) const {
    std::vector<std::vector<double>> pw(m_, std::vector<double>(maxdeg_ + 1, 1.0));
    for (std::size_t i = 0; i < m_; ++i)
      for (unsigned k = 1; k <= maxdeg_; ++k) pw[i][k] = pw[i][k - 1] * x[i];
    std::vector<double> q(alphas_.size(), 0.0);
    for (std::size_t a = 0; a < alphas_.size(); ++a) {
      double sum = 0;
      for (const auto& [b, w] : links_[a]) {
        double t = w;
        for (std::size_t i = 0; i < m_; ++i) t *= pw[i][betas_[b][i] - alphas_[a][i]];
        sum += t;
      }
      q[a] = sum;
    }
    return q;
  }

 private:
  static double choose(unsigned n, unsigned k) {
    double r = 1;
    for (unsigned j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
  }
  static void enumerate(const Exponent& beta, std::size_t i, Exponent cur, std::set<Exponent>& out) {
    if (i == beta.size()) {
      out.insert(cur);
      return;
    }
    for (unsigned e = 0; e <= beta[i]; ++e) {
      cur[i] = e;
      enumerate(beta, i + 1, cur, out);
    }
  }

  std::size_t m_;
  unsigned maxdeg_ = 0;
  std::vector<Exponent> betas_;
  std::vector<double> coeffs_;
  std::vector<Exponent> alphas_;
  struct Link {
    std::size_t beta;
    double weight;
  };
  std::vector<std::vector<Link>> links_;
};

std::vector<double> lift(std::span<const double> x, bool doubled) {
  std::vector<double> p(x.begin(), x.end());
  if (doubled) p.insert(p.end(), x.begin(), x.end());
  return p;
}

// Relative safety margin covering double rounding in the shift.
constexpr double kMargin = 1e-9;

double lower_bound_at(const DoubleShift& s, std::span<const double> x, bool doubled, double r) {
  const std::vector<double> q = s.at(lift(x, doubled));
  const std::size_t m = s.nvars();
  double value = 0;
  std::vector<double> bound(m, 0.0);
  for (std::size_t a = 0; a < q.size(); ++a) {
    const Exponent& alpha = s.alphas()[a];
    const unsigned k = total_degree(alpha);
    if (k == 0) {
      value = std::fabs(q[a]);
      continue;
    }
    const double term = std::fabs(q[a]) * std::pow(r, static_cast<double>(k - 1));
    for (std::size_t i = 0; i < m; ++i) bound[i] += term * alpha[i];
  }
  double M2 = 0;
  for (double b : bound) M2 += b * b;
  if (M2 == 0) return value == 0 ? 0.0 : r;
  return std::min(r, value / (std::sqrt(M2) * (1 + kMargin)) * (1 - kMargin));
}

DistanceOracle make_lower(const MultiPoly& h, std::size_t n, bool doubled, double r) {
  if (!(r > 0)) throw std::invalid_argument("generic_lower_oracle: radius must be positive");
  DistanceOracle o;
  o.mode = OracleMode::LowerBoundGeneric;
  o.nvars = n;
  o.lipschitz = doubled ? std::sqrt(2.0) : 1.0;
  o.label = std::string(doubled ? "generic-pairing:" : "generic:") + std::to_string(r);
  auto shift = std::make_shared<const DoubleShift>(h);
  o.eval = [shift, n, doubled, r](std::span<const double> x) {
    check_dim(x, n);
    return lower_bound_at(*shift, x, doubled, r);
  };
  return o;
}

double smallest_root(const std::vector<double>& coeffs) {
  if (coeffs.empty() || coeffs[0] == 0) return 0.0;
  double scale = 0;
  for (double c : coeffs) scale = std::max(scale, std::fabs(c));
  std::size_t deg = coeffs.size() - 1;
  while (deg > 0 && std::fabs(coeffs[deg]) <= 1e-14 * scale) --deg;
  if (deg == 0) return std::numeric_limits<double>::infinity();
  Eigen::VectorXd v(deg + 1);
  for (std::size_t k = 0; k <= deg; ++k) v[static_cast<Eigen::Index>(k)] = coeffs[k];
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
  solver.compute(v);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& z : solver.roots()) best = std::min(best, std::abs(z));
  return best;
}

DistanceOracle make_upper(const MultiPoly& h, std::size_t n, bool doubled, std::size_t samples, std::uint64_t seed) {
  const std::size_t m = h.nvars();
  auto dirs = std::make_shared<std::vector<std::vector<double>>>();
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> e(m, 0.0);
    e[i] = 1.0;
    dirs->push_back(std::move(e));
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<double> u(m);
    double norm = 0;
    for (auto& c : u) {
      c = normal(rng);
      norm += c * c;
    }
    norm = std::sqrt(norm);
    if (norm == 0) continue;
    for (auto& c : u) c /= norm;
    dirs->push_back(std::move(u));
  }

  DistanceOracle o;
  o.mode = OracleMode::UpperBoundDirectional;
  o.nvars = n;
  o.lipschitz = doubled ? std::sqrt(2.0) : 1.0;
  o.label = std::string(doubled ? "directional-pairing:" : "directional:") + std::to_string(samples);
  auto poly = std::make_shared<const MultiPoly>(h);
  o.eval = [poly, dirs, n, doubled](std::span<const double> x) {
    check_dim(x, n);
    const MultiPoly q = taylor_shift(*poly, std::span<const Dyadic>(to_dyadic(x, doubled)));
    const unsigned d = q.degree();
    double best = std::numeric_limits<double>::infinity();
    for (const auto& u : *dirs) {
      std::vector<double> coeffs(d + 1, 0.0);
      for (const auto& [alpha, c] : q.terms()) {
        double t = c.get_d();
        for (std::size_t i = 0; i < alpha.size(); ++i)
          for (unsigned e = 0; e < alpha[i]; ++e) t *= u[i];
        coeffs[total_degree(alpha)] += t;
      }
      best = std::min(best, smallest_root(coeffs));
      if (best == 0) break;
    }
    return best;
  };
  return o;
}

}  // namespace

std::pair<DistanceOracle, DistanceOracle> circle_distance_oracles(CircleVariant variant, double eps) {
  if (!(eps > 0)) throw std::invalid_argument("circle_distance_oracles: eps must be positive");
  DistanceOracle d0, d1;
  d0.nvars = d1.nvars = 2;
  d1.mode = OracleMode::ClosedFormPairing;
  d1.label = "pairing";
  // the closed form |x| is 1-Lipschitz even though a generic pairing distance is only sqrt(2)-Lipschitz
  d1.lipschitz = 1.0;
  d1.eval = [](std::span<const double> x) {
    check_dim(x, 2);
    return std::hypot(x[0], x[1]);
  };
  if (variant == CircleVariant::Plus) {
    d0.mode = OracleMode::ClosedFormCirclePlus;
    d0.label = "circle-plus:" + std::to_string(eps);
    d0.eval = [eps](std::span<const double> x) {
      check_dim(x, 2);
      return std::sqrt((x[0] * x[0] + x[1] * x[1]) / 2 + eps * eps);
    };
  } else {
    d0.mode = OracleMode::ClosedFormCircleMinus;
    d0.label = "circle-minus:" + std::to_string(eps);
    d0.eval = [eps](std::span<const double> x) {
      check_dim(x, 2);
      const double s = x[0] * x[0] + x[1] * x[1];
      if (s <= 4 * eps * eps) return std::fabs(std::sqrt(s) - eps);
      return std::sqrt(s / 2 - eps * eps);
    };
  }
  return {std::move(d0), std::move(d1)};
}

DistanceOracle generic_lower_oracle(const MultiPoly& f, double r) { return make_lower(f, f.nvars(), false, r); }

DistanceOracle generic_lower_pairing_oracle(const MultiPoly& f, double r) {
  return make_lower(gradient_pair(f), f.nvars(), true, r);
}

DistanceOracle directional_upper_oracle(const MultiPoly& f, std::size_t samples, std::uint64_t seed) {
  return make_upper(f, f.nvars(), false, samples, seed);
}

DistanceOracle directional_upper_pairing_oracle(const MultiPoly& f, std::size_t samples, std::uint64_t seed) {
  return make_upper(gradient_pair(f), f.nvars(), true, samples, seed);
}

}  // namespace ddsub
