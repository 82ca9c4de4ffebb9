#include "ddsub/poly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

namespace ddsub {

unsigned total_degree(const Exponent& alpha) {
  return std::accumulate(alpha.begin(), alpha.end(), 0u);
}

MultiPoly::MultiPoly(std::size_t nvars) : nvars_(nvars) {
  if (nvars == 0) throw std::invalid_argument("polynomial needs at least one variable");
}

MultiPoly MultiPoly::constant(std::size_t nvars, const Rational& c) {
  MultiPoly p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw std::out_of_range("variable index out of range");
  MultiPoly p(nvars);
  Exponent e(nvars, 0);
  e[index] = 1;
  p.add_term(e, Rational(1));
  return p;
}

unsigned MultiPoly::degree() const {
  unsigned d = 0;
  for (const auto& [alpha, c] : terms_) d = std::max(d, total_degree(alpha));
  return d;
}

Rational MultiPoly::coefficient(const Exponent& alpha) const {
  const auto it = terms_.find(alpha);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational MultiPoly::constant_term() const { return coefficient(Exponent(nvars_, 0)); }

void MultiPoly::add_term(const Exponent& alpha, const Rational& c) {
  if (alpha.size() != nvars_) throw std::invalid_argument("exponent length does not match nvars");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(alpha, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void MultiPoly::check_same_nvars(const MultiPoly& other) const {
  if (other.nvars_ != nvars_) throw std::invalid_argument("polynomials have different nvars");
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  check_same_nvars(other);
  for (const auto& [alpha, c] : other.terms_) add_term(alpha, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) {
  check_same_nvars(other);
  for (const auto& [alpha, c] : other.terms_) add_term(alpha, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [alpha, coeff] : terms_) coeff *= c;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_same_nvars(b);
  MultiPoly r(a.nvars_);
  Exponent e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::vector<const TermMap::value_type*> order;
  order.reserve(terms_.size());
  for (const auto& t : terms_) order.push_back(&t);
  std::sort(order.begin(), order.end(), [](auto* a, auto* b) {
    const unsigned da = total_degree(a->first), db = total_degree(b->first);
    if (da != db) return da > db;
    return a->first > b->first;
  });
  std::ostringstream out;
  bool first = true;
  for (const auto* t : order) {
    const Exponent& alpha = t->first;
    Rational c = t->second;
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    c = abs(c);
    const bool constant = total_degree(alpha) == 0;
    bool need_star = false;
    if (constant || c != 1) {
      out << to_string(c);
      need_star = true;
    }
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      if (alpha[i] == 0) continue;
      if (need_star) out << '*';
      out << 'x' << (i + 1);
      if (alpha[i] > 1) out << '^' << alpha[i];
      need_star = true;
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::size_t nvars) : text_(text), nvars_(nvars) {}

  MultiPoly parse() {
    MultiPoly result(nvars_);
    skip_ws();
    if (at_end()) throw ParseError("empty polynomial", pos_);
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        throw ParseError("expected '+' or '-'", pos_);
      }
      parse_term(result, sign);
      first = false;
      skip_ws();
    }
    return result;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  void parse_term(MultiPoly& result, int sign) {
    Rational coeff(sign);
    Exponent alpha(nvars_, 0);
    bool have_factor = false;
    skip_ws();
    if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      const std::string num = digits();
      skip_ws();
      Integer den(1);
      if (!at_end() && peek() == '/') {
        ++pos_;
        skip_ws();
        const std::size_t dpos = pos_;
        const std::string d = digits();
        if (d.empty()) throw ParseError("expected denominator", dpos);
        den = Integer(d, 10);
        if (den == 0) throw ParseError("zero denominator", dpos);
      }
      Rational c(Integer(num, 10), den);
      c.canonicalize();
      coeff *= c;
      have_factor = true;
    }
    while (true) {
      skip_ws();
      if (at_end()) break;
      if (peek() == '*') {
        if (!have_factor) throw ParseError("unexpected '*'", pos_);
        ++pos_;
        skip_ws();
        if (at_end() || peek() != 'x') throw ParseError("expected variable after '*'", pos_);
      }
      if (peek() != 'x') break;
      const std::size_t vpos = pos_;
      ++pos_;
      const std::string idx = digits();
      if (idx.empty()) throw ParseError("expected variable index", pos_);
      const unsigned long k = std::stoul(idx);
      if (k < 1 || k > nvars_) throw ParseError("variable x" + idx + " out of range", vpos);
      unsigned long e = 1;
      skip_ws();
      if (!at_end() && peek() == '^') {
        ++pos_;
        skip_ws();
        const std::size_t epos = pos_;
        const std::string ex = digits();
        if (ex.empty()) throw ParseError("expected exponent", epos);
        e = std::stoul(ex);
      }
      alpha[k - 1] += static_cast<unsigned>(e);
      have_factor = true;
    }
    if (!have_factor) throw ParseError("expected coefficient or variable", pos_);
    result.add_term(alpha, coeff);
  }

  std::string_view text_;
  std::size_t nvars_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_poly(std::string_view text, std::size_t nvars) {
  return PolyParser(text, nvars).parse();
}

// ---------------------------------------------------------------------------

namespace {

template <typename T>
T evaluate_impl(const MultiPoly& p, std::span<const T> point) {
  if (point.size() != p.nvars()) throw std::invalid_argument("evaluate: dimension mismatch");
  const unsigned d = p.degree();
  std::vector<std::vector<T>> powers(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) {
    powers[i].reserve(d + 1);
    powers[i].push_back(T(1));
    for (unsigned k = 1; k <= d; ++k) powers[i].push_back(powers[i].back() * point[i]);
  }
  T sum(0);
  for (const auto& [alpha, c] : p.terms()) {
    T term;
    if constexpr (std::is_same_v<T, Rational>) term = c;
    else term = c.get_d();
    for (std::size_t i = 0; i < alpha.size(); ++i)
      if (alpha[i] != 0) term *= powers[i][alpha[i]];
    sum += term;
  }
  return sum;
}

}  // namespace

Rational evaluate(const MultiPoly& p, std::span<const Rational> point) {
  return evaluate_impl<Rational>(p, point);
}

double evaluate(const MultiPoly& p, std::span<const double> point) {
  return evaluate_impl<double>(p, point);
}

MultiPoly partial_derivative(const MultiPoly& p, std::size_t axis) {
  if (axis >= p.nvars()) throw std::out_of_range("partial_derivative: axis out of range");
  MultiPoly r(p.nvars());
  for (const auto& [alpha, c] : p.terms()) {
    if (alpha[axis] == 0) continue;
    Exponent e = alpha;
    --e[axis];
    r.add_term(e, c * alpha[axis]);
  }
  return r;
}

namespace {

// Replaces x_axis by x_axis + a in every term. Terms are grouped by their
// other exponents; each group is a univariate polynomial shifted in place by
// synthetic division. A dyadic a = m / 2^e keeps everything in integers: the
// group is scaled by its common denominator D and by 2^(e(k-j)) so the shift
// becomes one by the integer m.
MultiPoly shift_axis(const MultiPoly& p, std::size_t axis, const Rational& a) {
  if (a == 0) return p;
  std::map<Exponent, std::vector<Rational>> groups;
  for (const auto& [alpha, c] : p.terms()) {
    Exponent rest = alpha;
    rest[axis] = 0;
    auto& v = groups[rest];
    if (v.size() <= alpha[axis]) v.resize(alpha[axis] + 1);
    v[alpha[axis]] = c;
  }
  const Integer& den = a.get_den();
  const bool dyadic = mpz_popcount(den.get_mpz_t()) == 1;
  const unsigned long e = dyadic ? mpz_scan1(den.get_mpz_t(), 0) : 0;
  MultiPoly r(p.nvars());
  for (auto& [rest, v] : groups) {
    const std::size_t k = v.size() - 1;
    Exponent alpha = rest;
    if (!dyadic) {
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = k; j-- > i;) v[j] += a * v[j + 1];
      for (std::size_t j = 0; j <= k; ++j) {
        alpha[axis] = static_cast<unsigned>(j);
        r.add_term(alpha, v[j]);
      }
      continue;
    }
    Integer D(1);
    for (const auto& c : v) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<Integer> b(k + 1);
    for (std::size_t j = 0; j <= k; ++j) {
      b[j] = v[j].get_num() * (D / v[j].get_den());
      mpz_mul_2exp(b[j].get_mpz_t(), b[j].get_mpz_t(), e * (k - j));
    }
    const Integer& m = a.get_num();
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = k; j-- > i;) mpz_addmul(b[j].get_mpz_t(), m.get_mpz_t(), b[j + 1].get_mpz_t());
    for (std::size_t j = 0; j <= k; ++j) {
      if (b[j] == 0) continue;
      Integer q = D;
      mpz_mul_2exp(q.get_mpz_t(), q.get_mpz_t(), e * (k - j));
      Rational c(b[j], q);
      c.canonicalize();
      alpha[axis] = static_cast<unsigned>(j);
      r.add_term(alpha, c);
    }
  }
  return r;
}

}  // namespace

MultiPoly taylor_shift(const MultiPoly& p, std::span<const Rational> center) {
  if (center.size() != p.nvars()) throw std::invalid_argument("taylor_shift: dimension mismatch");
  MultiPoly r = p;
  for (std::size_t i = 0; i < center.size(); ++i) r = shift_axis(r, i, center[i]);
  return r;
}

MultiPoly taylor_shift(const MultiPoly& p, std::span<const Dyadic> center) {
  if (center.size() != p.nvars()) throw std::invalid_argument("taylor_shift: dimension mismatch");
  std::vector<Rational> c;
  c.reserve(center.size());
  for (const auto& x : center) c.push_back(x.to_rational());
  return taylor_shift(p, std::span<const Rational>(c));
}

MultiPoly rename_variables(const MultiPoly& p, std::size_t nvars, std::span<const std::size_t> map) {
  if (map.size() != p.nvars()) throw std::invalid_argument("rename_variables: map size mismatch");
  MultiPoly r(nvars);
  Exponent e(nvars);
  for (const auto& [alpha, c] : p.terms()) {
    std::fill(e.begin(), e.end(), 0u);
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      if (map[i] >= nvars) throw std::out_of_range("rename_variables: target out of range");
      e[map[i]] += alpha[i];
    }
    r.add_term(e, c);
  }
  return r;
}

MultiPoly gradient_pair(const MultiPoly& f) {
  const std::size_t n = f.nvars();
  std::vector<std::size_t> to_x(n), to_y(n);
  std::iota(to_x.begin(), to_x.end(), 0);
  std::iota(to_y.begin(), to_y.end(), n);
  MultiPoly g(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const MultiPoly di = partial_derivative(f, i);
    if (di.is_zero()) continue;
    g += rename_variables(di, 2 * n, to_x) * rename_variables(di, 2 * n, to_y);
  }
  return g;
}

CoeffStats coeff_stats(const MultiPoly& p) {
  CoeffStats s;
  s.degree = p.degree();
  s.zero_polynomial = p.is_zero();
  for (const auto& [alpha, c] : p.terms()) s.height = std::max(s.height, abs(c));
  if (s.height > 1) s.bitsize = static_cast<unsigned>(ceil_log2(s.height));
  return s;
}

MultiPoly clear_denominators(const MultiPoly& p) {
  Integer l(1);
  for (const auto& [alpha, c] : p.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  return p * Rational(l);
}

}  // namespace ddsub
