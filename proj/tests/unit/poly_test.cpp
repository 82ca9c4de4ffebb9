#include <doctest.h>

#include <vector>

#include "ddsub/poly.hpp"
#include "support.hpp"

using namespace ddsub;

namespace {

MultiPoly P(const char* text, std::size_t n = 2) { return parse_poly(text, n); }

}  // namespace

TEST_SUITE("poly") {
  TEST_CASE("parsing") {
    const MultiPoly c = P("x1^2 + x2^2 - 1");
    CHECK(c.terms().size() == 3);
    CHECK(c.coefficient({2, 0}) == 1);
    CHECK(c.coefficient({0, 2}) == 1);
    CHECK(c.coefficient({0, 0}) == -1);
    CHECK(P("0").is_zero());
    const MultiPoly a = P("1000*x1^4*x2^4 - 1");
    CHECK(a.terms().size() == 2);
    CHECK(a.coefficient({4, 4}) == 1000);
    CHECK(P("3/4 x1 x2 - x2*x1").coefficient({1, 1}) == Rational(-1, 4));
    CHECK(P("x1 - x1").is_zero());
  }

  TEST_CASE("parse errors carry a position") {
    CHECK_THROWS_AS(P("x3"), ParseError);
    CHECK_THROWS_AS(P("x1^"), ParseError);
    CHECK_THROWS_AS(P("2 +"), ParseError);
    CHECK_THROWS_AS(P("1/0 x1"), ParseError);
    try {
      P("x1 + $");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.position() == 5);
    }
  }

  TEST_CASE("canonical text round-trips") {
    testing::Rng rng(11);
    for (int i = 0; i < 200; ++i) {
      const std::size_t n = static_cast<std::size_t>(testing::uniform(rng, 1, 4));
      const MultiPoly p = testing::random_poly(rng, n, 6);
      CHECK(parse_poly(p.str(), n) == p);
    }
    CHECK(P("x2 + x1^2 - 1").str() == "x1^2 + x2 - 1");
  }

  TEST_CASE("evaluation") {
    const MultiPoly c = P("x1^2 + x2^2 - 1");
    CHECK(evaluate(c, std::vector<Rational>{0, 0}) == -1);
    CHECK(evaluate(c, std::vector<Rational>{1, 0}) == 0);
    CHECK(evaluate(P("x1^3 - 2 x1 + 1", 1), std::vector<Rational>{Rational(1, 2)}) == Rational(1, 8));
    CHECK(evaluate(c, std::vector<double>{0.5, 0.5}) == doctest::Approx(-0.5));
  }

  TEST_CASE("partial derivatives") {
    CHECK(partial_derivative(P("x1^2 + x2^2 - 1"), 0) == P("2 x1"));
    CHECK(partial_derivative(P("x1^4 x2^4"), 1) == P("4 x1^4 x2^3"));
    CHECK(partial_derivative(partial_derivative(P("x1^2"), 0), 0) == P("2"));
    CHECK(partial_derivative(P("x2^3"), 0).is_zero());
  }

  TEST_CASE("taylor shift examples") {
    const std::vector<Dyadic> one{Dyadic(1)};
    CHECK(taylor_shift(P("x1^2", 1), std::span<const Dyadic>(one)) == P("x1^2 + 2 x1 + 1", 1));
    const std::vector<Dyadic> half{Dyadic(Integer(1), -1), Dyadic(Integer(-1), -1)};
    CHECK(taylor_shift(P("x1 x2"), std::span<const Dyadic>(half)) == P("x1 x2 - 1/2 x1 + 1/2 x2 - 1/4"));
    testing::Rng rng(3);
    for (int i = 0; i < 50; ++i) {
      const MultiPoly p = testing::random_poly(rng, 3, 5);
      const std::vector<Dyadic> zero(3, Dyadic(0));
      CHECK(taylor_shift(p, std::span<const Dyadic>(zero)) == p);
    }
  }

  TEST_CASE("shifts compose and invert") {
    testing::Rng rng(5);
    for (int i = 0; i < 100; ++i) {
      const std::size_t n = static_cast<std::size_t>(testing::uniform(rng, 1, 3));
      const MultiPoly p = testing::random_poly(rng, n, 5);
      std::vector<Dyadic> a, b, ab, neg;
      for (std::size_t k = 0; k < n; ++k) {
        a.push_back(testing::small_dyadic(rng));
        b.push_back(testing::small_dyadic(rng));
        ab.push_back(a.back() + b.back());
        neg.push_back(-a.back());
      }
      const MultiPoly pa = taylor_shift(p, std::span<const Dyadic>(a));
      CHECK(taylor_shift(pa, std::span<const Dyadic>(b)) == taylor_shift(p, std::span<const Dyadic>(ab)));
      CHECK(taylor_shift(pa, std::span<const Dyadic>(neg)) == p);
    }
  }

  TEST_CASE("rational and dyadic shifts agree, including non-dyadic offsets") {
    testing::Rng rng(9);
    for (int i = 0; i < 60; ++i) {
      const MultiPoly p = testing::random_poly(rng, 2, 5);
      std::vector<Rational> c{testing::small_rational(rng), testing::small_rational(rng)};
      const MultiPoly q = taylor_shift(p, std::span<const Rational>(c));
      for (int t = 0; t < 5; ++t) {
        const std::vector<Rational> x{testing::small_rational(rng), testing::small_rational(rng)};
        const std::vector<Rational> xc{x[0] + c[0], x[1] + c[1]};
        CHECK(evaluate(q, std::span<const Rational>(x)) == evaluate(p, std::span<const Rational>(xc)));
      }
    }
  }

  TEST_CASE("gradient pairing") {
    CHECK(gradient_pair(P("x1^2 + x2^2")) == parse_poly("4 x1 x3 + 4 x2 x4", 4));
    CHECK(gradient_pair(P("x1", 1)) == parse_poly("1", 2));
    CHECK(gradient_pair(P("x1^3", 1)) == parse_poly("9 x1^2 x2^2", 2));
    CHECK(gradient_pair(P("5")).is_zero());
  }

  TEST_CASE("coefficient statistics") {
    const CoeffStats a = coeff_stats(P("x1^2 + x2^2 - 1"));
    CHECK(a.degree == 2);
    CHECK(a.height == 1);
    CHECK(a.bitsize == 0);
    const CoeffStats b = coeff_stats(P("1000*x1^4*x2^4 - 1"));
    CHECK(b.degree == 8);
    CHECK(b.height == 1000);
    CHECK(b.bitsize == 10);
    const CoeffStats z = coeff_stats(P("0"));
    CHECK(z.zero_polynomial);
    CHECK(z.degree == 0);
    CHECK(z.height == 0);
  }

  TEST_CASE("clearing denominators") {
    CHECK(clear_denominators(P("1/2 x1 - 1/3")) == P("3 x1 - 2"));
    CHECK(clear_denominators(P("4 x1 - 6")) == P("4 x1 - 6"));
  }

  TEST_CASE("arithmetic") {
    CHECK(P("x1 + 1") * P("x1 - 1") == P("x1^2 - 1"));
    CHECK(P("x1") + P("x2") - P("x1") == P("x2"));
    CHECK(P("x1 + x2") * Rational(1, 2) == P("1/2 x1 + 1/2 x2"));
    CHECK_THROWS(P("x1") + parse_poly("x1", 3));
  }
}
