// Sparse multivariate polynomials with exact rational coefficients.

#ifndef DDSUB_POLY_HPP
#define DDSUB_POLY_HPP

#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ddsub/numeric.hpp"

namespace ddsub {

/// Multi-index alpha; one exponent per variable.
using Exponent = std::vector<unsigned>;

unsigned total_degree(const Exponent& alpha);

class MultiPoly {
 public:
  using TermMap = std::map<Exponent, Rational>;

  explicit MultiPoly(std::size_t nvars);

  static MultiPoly constant(std::size_t nvars, const Rational& c);
  /// The polynomial x_{index+1}.
  static MultiPoly variable(std::size_t nvars, std::size_t index);

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Total degree; 0 for constants and for the zero polynomial.
  unsigned degree() const;

  Rational coefficient(const Exponent& alpha) const;
  Rational constant_term() const;

  /// Adds c * x^alpha, dropping the term if it cancels.
  void add_term(const Exponent& alpha, const Rational& c);

  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator-=(const MultiPoly& other);
  MultiPoly& operator*=(const Rational& c);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) = default;

  /// Canonical text: terms by descending total degree, then descending
  /// exponent vector. parse_poly(p.str(), p.nvars()) == p.
  std::string str() const;

 private:
  void check_same_nvars(const MultiPoly& other) const;

  std::size_t nvars_;
  TermMap terms_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Grammar: terms joined by '+'/'-'; a term is an optional integer or
/// integer/integer coefficient followed by factors x<k>[^e], optionally
/// separated by '*'. Whitespace is ignored. Variables are x1..x<nvars>.
MultiPoly parse_poly(std::string_view text, std::size_t nvars);

Rational evaluate(const MultiPoly& p, std::span<const Rational> point);
double evaluate(const MultiPoly& p, std::span<const double> point);

MultiPoly partial_derivative(const MultiPoly& p, std::size_t axis);

/// q(x) = p(x + center), exact.
MultiPoly taylor_shift(const MultiPoly& p, std::span<const Dyadic> center);
MultiPoly taylor_shift(const MultiPoly& p, std::span<const Rational> center);

/// g(x, y) = <grad f(x), grad f(y)> in 2n variables (x first, then y).
MultiPoly gradient_pair(const MultiPoly& f);

/// Substitutes variables: result in `nvars` variables where old variable i
/// becomes new variable map[i].
MultiPoly rename_variables(const MultiPoly& p, std::size_t nvars, std::span<const std::size_t> map);

struct CoeffStats {
  unsigned degree = 0;
  Rational height{0};
  unsigned bitsize = 0;  // ceil(lg H); 0 when H <= 1
  bool zero_polynomial = false;
};

CoeffStats coeff_stats(const MultiPoly& p);

/// Smallest positive integer multiple of p with integer coefficients.
MultiPoly clear_denominators(const MultiPoly& p);

}  // namespace ddsub

#endif  // DDSUB_POLY_HPP
