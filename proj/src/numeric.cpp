#include "ddsub/numeric.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ddsub {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool is_integer_text(const std::string& s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

Integer parse_integer(const std::string& s) {
  if (!is_integer_text(s)) throw std::invalid_argument("not an integer: '" + s + "'");
  return Integer(s[0] == '+' ? s.substr(1) : s, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string s = trim(text);
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    Integer num = parse_integer(trim(s.substr(0, slash)));
    Integer den = parse_integer(trim(s.substr(slash + 1)));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  const auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string ip = s.substr(0, dot);
    std::string fp = s.substr(dot + 1);
    bool neg = !ip.empty() && ip[0] == '-';
    if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) ip.erase(0, 1);
    if (ip.empty()) ip = "0";
    if (fp.empty()) fp = "0";
    if (!is_integer_text(ip) || !is_integer_text(fp) || fp[0] == '+' || fp[0] == '-')
      throw std::invalid_argument("not a decimal: '" + s + "'");
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, fp.size());
    Rational q(Integer(ip + fp, 10), den);
    q.canonicalize();
    return neg ? Rational(-q) : q;
  }
  return Rational(parse_integer(s));
}

std::string to_string(const Rational& q) { return q.get_str(10); }

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

std::size_t bit_length(const Integer& z) {
  if (z == 0) return 0;
  return mpz_sizeinbase(z.get_mpz_t(), 2);
}

long ceil_log2(const Rational& q) {
  if (q <= 0) throw std::invalid_argument("ceil_log2 of a non-positive value");
  // 2^(k-1) < q <= 2^k
  long k = static_cast<long>(bit_length(q.get_num())) - static_cast<long>(bit_length(q.get_den()));
  auto pow2 = [](long e) {
    Rational r(1);
    if (e >= 0) mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(e));
    else mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(-e));
    return r;
  };
  while (pow2(k) < q) ++k;
  while (pow2(k - 1) >= q) --k;
  return k;
}

// ---------------------------------------------------------------------------

Dyadic::Dyadic(long value) : mantissa_(value), exponent_(0) { normalize(); }

Dyadic::Dyadic(Integer mantissa, long exponent)
    : mantissa_(std::move(mantissa)), exponent_(exponent) {
  normalize();
}

void Dyadic::normalize() {
  if (mantissa_ == 0) {
    exponent_ = 0;
    return;
  }
  const auto tz = mpz_scan1(mantissa_.get_mpz_t(), 0);
  if (tz > 0) {
    mpz_fdiv_q_2exp(mantissa_.get_mpz_t(), mantissa_.get_mpz_t(), tz);
    exponent_ += static_cast<long>(tz);
  }
}

Dyadic Dyadic::from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite double");
  if (value == 0.0) return {};
  int e = 0;
  const double frac = std::frexp(value, &e);  // value = frac * 2^e, |frac| in [0.5,1)
  const double scaled = std::ldexp(frac, 53);
  return Dyadic(Integer(static_cast<long>(scaled)), e - 53);
}

Dyadic Dyadic::from_rational(const Rational& q) {
  const Integer& den = q.get_den();
  if (mpz_popcount(den.get_mpz_t()) != 1)
    throw std::invalid_argument("not a dyadic rational: " + to_string(q));
  const long shift = static_cast<long>(mpz_scan1(den.get_mpz_t(), 0));
  return Dyadic(q.get_num(), -shift);
}

Dyadic Dyadic::parse(std::string_view text) {
  const std::string s = trim(text);
  const auto star = s.find('*');
  if (star != std::string::npos) {
    const std::string rest = trim(s.substr(star + 1));
    if (rest.rfind("2^", 0) != 0) throw std::invalid_argument("expected m*2^e, got '" + s + "'");
    const Integer m = parse_integer(trim(s.substr(0, star)));
    const Integer e = parse_integer(trim(rest.substr(2)));
    if (!e.fits_slong_p()) throw std::invalid_argument("exponent out of range: '" + s + "'");
    return Dyadic(m, e.get_si());
  }
  return from_rational(parse_rational(s));
}

Rational Dyadic::to_rational() const {
  Rational q(mantissa_);
  if (exponent_ >= 0) mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(exponent_));
  else mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(-exponent_));
  return q;
}

double Dyadic::to_double() const {
  long e = 0;
  const double d = mpz_get_d_2exp(&e, mantissa_.get_mpz_t());
  return std::ldexp(d, static_cast<int>(e + exponent_));
}

Dyadic Dyadic::half() const {
  Dyadic r = *this;
  if (!r.is_zero()) --r.exponent_;
  return r;
}

Dyadic Dyadic::twice() const {
  Dyadic r = *this;
  if (!r.is_zero()) ++r.exponent_;
  return r;
}

std::size_t Dyadic::bit_size() const {
  return bit_length(mantissa_) + static_cast<std::size_t>(exponent_ < 0 ? -exponent_ : 0);
}

std::string Dyadic::str() const { return mantissa_.get_str(10) + "*2^" + std::to_string(exponent_); }

namespace {

// Returns (a', b') mantissas aligned to the common exponent min(ea, eb).
std::pair<Integer, Integer> align(const Dyadic& a, const Dyadic& b, long& e) {
  e = std::min(a.exponent(), b.exponent());
  Integer ma = a.mantissa(), mb = b.mantissa();
  mpz_mul_2exp(ma.get_mpz_t(), ma.get_mpz_t(), static_cast<unsigned long>(a.exponent() - e));
  mpz_mul_2exp(mb.get_mpz_t(), mb.get_mpz_t(), static_cast<unsigned long>(b.exponent() - e));
  return {ma, mb};
}

}  // namespace

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  long e = 0;
  auto [ma, mb] = align(a, b, e);
  return Dyadic(ma + mb, e);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  return Dyadic(a.mantissa() * b.mantissa(), a.exponent() + b.exponent());
}

Dyadic operator-(const Dyadic& a) {
  Dyadic r = a;
  r.mantissa_ = -r.mantissa_;
  return r;
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  long e = 0;
  auto [ma, mb] = align(a, b, e);
  const int c = cmp(ma, mb);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Dyadic abs(const Dyadic& x) { return x.sign() < 0 ? -x : x; }

}  // namespace ddsub
