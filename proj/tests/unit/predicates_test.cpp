#include <doctest.h>

#include <cmath>
#include <vector>

#include "ddsub/oracle.hpp"
#include "ddsub/predicates.hpp"
#include "support.hpp"

using namespace ddsub;

namespace {

Box box2(const char* cx, const char* cy, const char* h) {
  return Box({Dyadic::parse(cx), Dyadic::parse(cy)}, Dyadic::parse(h));
}

// Independent 40-digit evaluations of the closed forms.
struct Frozen {
  unsigned n, d;
  double K0, K1, w0, w1;
};
constexpr Frozen kFrozen[] = {
    {2, 2, 0.075899195500923483875, 0.0013690627917388643569, 0.053668835825306494235, 0.00096807358390873704252},
    {2, 1, 0.14624832586364325586, 1.4142135623730950488, 0.10341318295536209072, 1.0},
    {3, 4, 0.0065413430348594811057, 8.8053123516735876958e-6, 0.0037766461620378049675, 5.0837494565374825428e-6},
    {1, 3, 0.20712145179570277034, 0.027353444011312795758, 0.20712145179570277034, 0.027353444011312795758},
};

void check_bracket(const Bracket& b, double expected) {
  CHECK(b.lower <= b.upper);
  CHECK(b.lower == doctest::Approx(expected).epsilon(1e-14));
  CHECK(b.upper == doctest::Approx(expected).epsilon(1e-14));
  CHECK(b.lower <= std::nextafter(expected, INFINITY));
  CHECK(b.upper >= std::nextafter(expected, -INFINITY));
}

}  // namespace

TEST_SUITE("predicates") {
  TEST_CASE("C0 examples") {
    const MultiPoly circle = parse_poly("x1^2 + x2^2 - 1", 2);
    CHECK(c0_test(circle, box2("3", "3", "1/4")).passed);
    const TestResult at0 = c0_test(circle, box2("0", "0", "1"));
    CHECK_FALSE(at0.passed);
    CHECK(at0.enclosure == IntervalR(-3, 1));
    CHECK(c0_test(parse_poly("5", 2), box2("0", "0", "100")).passed);
    CHECK_FALSE(c0_test(parse_poly("0", 2), box2("0", "0", "1")).passed);
  }

  TEST_CASE("C1 examples") {
    const MultiPoly linear = parse_poly("3 x1 - x2 + 7", 2);
    CHECK(c1_test(gradient_pair(linear), box2("0", "0", "1000")).passed);
    CHECK(c1_inequality_direct(linear, box2("0", "0", "1000")));
    const MultiPoly sq = parse_poly("x1^2 + x2^2", 2);
    for (const char* h : {"1", "1/8", "1/1024"}) {
      CHECK_FALSE(c1_test(gradient_pair(sq), box2("0", "0", h)).passed);
      CHECK_FALSE(c1_inequality_direct(sq, box2("0", "0", h)));
    }
    const MultiPoly circle = parse_poly("x1^2 + x2^2 - 1", 2);
    CHECK(c1_test(gradient_pair(circle), box2("1", "0", "1/4")).passed);
    CHECK(c1_inequality_direct(circle, box2("1", "0", "1/4")));
    CHECK_THROWS(c1_test(circle, box2("1", "0", "1/4")));
  }

  TEST_CASE("direct C1 inequality agrees with the doubled centered form") {
    testing::Rng rng(31);
    for (int i = 0; i < 400; ++i) {
      const std::size_t n = static_cast<std::size_t>(testing::uniform(rng, 1, 3));
      const MultiPoly f = testing::random_poly(rng, n, 4, 6);
      const Box J = testing::random_box(rng, n);
      CHECK(c1_test(gradient_pair(f), J).passed == c1_inequality_direct(f, J));
    }
  }

  TEST_CASE("evaluate_shifted checks C0 first and skips C1 on a pass") {
    const MultiPoly f = parse_poly("x1^2 + x2^2 - 1", 2);
    const Box far = box2("3", "3", "1/4");
    const MultiPoly fs = taylor_shift(f, std::span<const Dyadic>(far.center()));
    const std::vector<Dyadic> dc = doubled_center(far);
    const MultiPoly gs = taylor_shift(gradient_pair(f), std::span<const Dyadic>(dc));
    const PredicateOutcome o = evaluate_shifted(fs, gs, far.halfwidth());
    CHECK(o.tag == PredicateTag::C0);
    CHECK_FALSE(o.enclosure1.has_value());

    const Box on = box2("1", "0", "1/4");
    const MultiPoly fs1 = taylor_shift(f, std::span<const Dyadic>(on.center()));
    const std::vector<Dyadic> dc1 = doubled_center(on);
    const PredicateOutcome o1 =
        evaluate_shifted(fs1, taylor_shift(gradient_pair(f), std::span<const Dyadic>(dc1)), on.halfwidth());
    CHECK(o1.tag == PredicateTag::C1);
    REQUIRE(o1.enclosure1.has_value());
    CHECK_FALSE(o1.enclosure1->contains_zero());
  }

  TEST_CASE("diameter-distance constants match high-precision values") {
    for (const Frozen& f : kFrozen) {
      CAPTURE(f.n);
      CAPTURE(f.d);
      const PredicateConstants pc = predicate_constants(f.n, f.d);
      check_bracket(pc.K0, f.K0);
      check_bracket(pc.K1, f.K1);
      check_bracket(pc.width0, f.w0);
      check_bracket(pc.width1, f.w1);
      CHECK(pc.K.lower == std::min(pc.K0.lower, pc.K1.lower));
    }
    CHECK_THROWS(predicate_constants(0, 2));
    CHECK_THROWS(predicate_constants(2, 0));
  }

  TEST_CASE("sufficient widths are linear in the distance and rounded down") {
    const double w = sufficient_width_c0(2, 2, 1.0);
    CHECK(w < 0.053668835825306494235);
    CHECK(w == doctest::Approx(0.053668835825306494235).epsilon(1e-14));
    CHECK(sufficient_width_c1(2, 2, 1.0) == doctest::Approx(0.00096807358390873704252).epsilon(1e-14));
    CHECK(sufficient_width_c0(2, 2, 0.5) == doctest::Approx(w / 2).epsilon(1e-14));
    CHECK(sufficient_width_c0(2, 2, 1e-300) < 1e-301);
    CHECK_THROWS(sufficient_width_c0(2, 2, 0.0));
  }

  TEST_CASE("boxes below the sufficient width pass on the circle-plus family") {
    const MultiPoly f = parse_poly("x1^2 + x2^2 + 1/16", 2);
    const MultiPoly g = gradient_pair(f);
    const auto [d0, d1] = circle_distance_oracles(CircleVariant::Plus, 0.25);
    testing::Rng rng(32);
    int checked0 = 0, checked1 = 0;
    for (int i = 0; i < 100; ++i) {
      const std::vector<Dyadic> x{testing::small_dyadic(rng, 7, 5), testing::small_dyadic(rng, 7, 5)};
      const std::vector<double> xd{x[0].to_double(), x[1].to_double()};
      if (auto J = testing::box_around(rng, x, sufficient_width_c0(2, 2, d0(xd)))) {
        CHECK(c0_test(f, *J).passed);
        ++checked0;
      }
      const double r1 = d1(xd);
      if (r1 > 0) {
        if (auto J = testing::box_around(rng, x, sufficient_width_c1(2, 2, r1))) {
          CHECK(c1_test(g, *J).passed);
          ++checked1;
        }
      }
    }
    CHECK(checked0 == 100);
    CHECK(checked1 > 80);
  }
}
