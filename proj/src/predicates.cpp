#include "ddsub/predicates.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include <mpfr.h>

namespace ddsub {

TestResult c0_test(const MultiPoly& f, const Box& J) {
  if (f.nvars() != J.nvars()) throw std::invalid_argument("c0_test: dimension mismatch");
  IntervalR enc = centered_form(f, J);
  const bool pass = !enc.contains_zero();
  return {pass, std::move(enc)};
}

TestResult c1_test(const MultiPoly& g, const Box& J) {
  if (g.nvars() != 2 * J.nvars()) throw std::invalid_argument("c1_test: dimension mismatch");
  IntervalR enc = centered_form_doubled(g, J);
  const bool pass = !enc.contains_zero();
  return {pass, std::move(enc)};
}

bool c1_inequality_direct(const MultiPoly& f, const Box& J) {
  if (f.nvars() != J.nvars()) throw std::invalid_argument("c1_inequality_direct: dimension mismatch");
  const std::size_t n = f.nvars();
  // Taylor coefficients t_gamma = d^gamma f(m) / gamma!.
  const MultiPoly t = taylor_shift(f, std::span<const Dyadic>(J.center()));

  Rational grad_sq(0);
  for (std::size_t i = 0; i < n; ++i) {
    Exponent e(n, 0);
    e[i] = 1;
    const Rational gi = t.coefficient(e);
    grad_sq += gi * gi;
  }
  if (grad_sq == 0) return false;

  // Multi-indices alpha with alpha + e_i in the support for some i.
  std::set<Exponent> indices;
  for (const auto& [gamma, c] : t.terms()) {
    for (std::size_t i = 0; i < n; ++i) {
      if (gamma[i] == 0) continue;
      Exponent a = gamma;
      --a[i];
      indices.insert(a);
    }
  }

  // d^{alpha+e_i} f(m) / alpha! = (alpha_i + 1) t_{alpha+e_i}
  auto scaled_partial = [&](const Exponent& alpha, std::size_t i) -> Rational {
    Exponent a = alpha;
    ++a[i];
    return t.coefficient(a) * (alpha[i] + 1);
  };

  const Rational r = J.halfwidth().to_rational();
  Rational lhs(0);
  for (const auto& alpha : indices) {
    for (const auto& beta : indices) {
      const unsigned k = total_degree(alpha) + total_degree(beta);
      if (k == 0) continue;
      Rational s(0);
      for (std::size_t i = 0; i < n; ++i) s += scaled_partial(alpha, i) * scaled_partial(beta, i);
      if (s == 0) continue;
      Rational rk(1);
      for (unsigned j = 0; j < k; ++j) rk *= r;
      lhs += abs(s) * rk;
    }
  }
  // lhs / ||grad f(m)||^2 < 1
  return lhs < grad_sq;
}

PredicateOutcome evaluate_shifted(const MultiPoly& f_shifted, const MultiPoly& g_shifted,
                                  const Dyadic& halfwidth) {
  PredicateOutcome out;
  out.enclosure0 = centered_form_shifted(f_shifted, halfwidth);
  if (!out.enclosure0.contains_zero()) {
    out.tag = PredicateTag::C0;
    return out;
  }
  out.enclosure1 = centered_form_shifted(g_shifted, halfwidth);
  out.tag = out.enclosure1->contains_zero() ? PredicateTag::Neither : PredicateTag::C1;
  return out;
}

// ---------------------------------------------------------------------------
// Directed evaluation of the constants.

namespace {

constexpr mpfr_prec_t kPrecision = 256;

class Mpfr {
 public:
  Mpfr() { mpfr_init2(v_, kPrecision); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

// ln(1 + 2^{2 - a}) rounded in direction rnd.
void log_term(Mpfr& out, long a, mpfr_rnd_t rnd) {
  Mpfr t;
  mpfr_set_ui_2exp(t.get(), 1, 2 - a, MPFR_RNDN);  // exact
  mpfr_log1p(out.get(), t.get(), rnd);
}

// sqrt(k) rounded in direction rnd.
void root(Mpfr& out, unsigned long k, mpfr_rnd_t rnd) { mpfr_sqrt_ui(out.get(), k, rnd); }

mpfr_rnd_t flip(mpfr_rnd_t r) { return r == MPFR_RNDD ? MPFR_RNDU : MPFR_RNDD; }

// Computes num_scale * L / (A + s * L), rounded in direction `dir`, where the
// caller passes s and L already rounded so that the quotient moves in `dir`.
double quotient(double num_scale, const Mpfr& s_num, const Mpfr& L, const Mpfr& A, const Mpfr& s_den,
                mpfr_rnd_t dir) {
  Mpfr num, den, q;
  mpfr_mul(num.get(), s_num.get(), L.get(), dir);
  mpfr_mul_d(num.get(), num.get(), num_scale, dir);
  mpfr_mul(den.get(), s_den.get(), L.get(), flip(dir));
  mpfr_add(den.get(), den.get(), A.get(), flip(dir));
  mpfr_div(q.get(), num.get(), den.get(), dir);
  return mpfr_get_d(q.get(), dir);
}

struct ConstantPair {
  Bracket diameter;  // with the sqrt(n) factor
  Bracket width;     // without
};

// 2 sqrt(n) L / (A + sqrt(m) L) and 2 L / (A + sqrt(m) L), L = ln(1 + 2^{2-a}).
// Both increase in L; the first increases in sqrt(n); both decrease in sqrt(m).
ConstantPair constant_pair(unsigned long n, unsigned long m, long a, const Integer& A_int) {
  ConstantPair out;
  Mpfr A;
  mpfr_set_z(A.get(), A_int.get_mpz_t(), MPFR_RNDN);  // exact at 256 bits for our sizes
  Mpfr one;
  mpfr_set_ui(one.get(), 1, MPFR_RNDN);
  for (mpfr_rnd_t dir : {MPFR_RNDD, MPFR_RNDU}) {
    Mpfr L, sn, sm;
    log_term(L, a, dir);
    root(sn, n, dir);
    root(sm, m, flip(dir));
    const double diam = quotient(2.0, sn, L, A, sm, dir);
    const double width = quotient(2.0, one, L, A, sm, dir);
    if (dir == MPFR_RNDD) {
      out.diameter.lower = diam;
      out.width.lower = width;
    } else {
      out.diameter.upper = diam;
      out.width.upper = width;
    }
  }
  return out;
}

}  // namespace

PredicateConstants predicate_constants(unsigned n, unsigned d) {
  if (n < 1 || d < 1) throw std::invalid_argument("predicate_constants: need n >= 1 and d >= 1");
  PredicateConstants pc;
  pc.n = n;
  pc.d = d;
  Integer A0, A1;
  mpz_ui_pow_ui(A0.get_mpz_t(), 2, n);
  A0 *= d;
  mpz_ui_pow_ui(A1.get_mpz_t(), 2, 2 * n + 1);
  A1 *= (d - 1);
  const ConstantPair c0 = constant_pair(n, n, 2L * n, A0);
  const ConstantPair c1 = constant_pair(n, 2UL * n, 4L * n, A1);
  pc.K0 = c0.diameter;
  pc.width0 = c0.width;
  pc.K1 = c1.diameter;
  pc.width1 = c1.width;
  pc.K = {std::min(pc.K0.lower, pc.K1.lower), std::min(pc.K0.upper, pc.K1.upper)};
  return pc;
}

namespace {

double scaled_down(double constant, double dist) {
  if (!(dist > 0) || !std::isfinite(dist)) throw std::invalid_argument("distance must be positive and finite");
  const double w = constant * dist;
  return w > 0 ? std::nextafter(w, 0.0) : 0.0;
}

}  // namespace

double sufficient_width_c0(unsigned n, unsigned d, double dist) {
  return scaled_down(predicate_constants(n, d).width0.lower, dist);
}

double sufficient_width_c1(unsigned n, unsigned d, double dist) {
  return scaled_down(predicate_constants(n, d).width1.lower, dist);
}

}  // namespace ddsub
