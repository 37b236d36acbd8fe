#include "lel/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace lel {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void bad_rational(std::string_view text) {
  throw std::invalid_argument("not a rational number: '" + std::string(text) + "' (expected a/b, an integer, or a finite decimal)");
}

}  // namespace

Rational::Rational(long num, long den) : v_(mpz_class(num), mpz_class(den)) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  v_.canonicalize();
}

Rational::Rational(mpq_class v) : v_(std::move(v)) {
  if (v_.get_den() == 0) throw std::invalid_argument("rational with zero denominator");
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  bool neg = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) bad_rational(text);

  mpz_class num, den;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view ns = s.substr(0, slash);
    std::string_view ds = s.substr(slash + 1);
    if (!all_digits(ns) || !all_digits(ds)) bad_rational(text);
    num = mpz_class(std::string(ns), 10);
    den = mpz_class(std::string(ds), 10);
    if (den == 0) bad_rational(text);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if (whole.empty() && frac.empty()) bad_rational(text);
    if (!whole.empty() && !all_digits(whole)) bad_rational(text);
    if (!frac.empty() && !all_digits(frac)) bad_rational(text);
    std::string digits = std::string(whole) + std::string(frac);
    num = mpz_class(digits.empty() ? "0" : digits, 10);
    den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  } else {
    if (!all_digits(s)) bad_rational(text);
    num = mpz_class(std::string(s), 10);
    den = 1;
  }
  if (neg) num = -num;
  mpq_class q(num, den);
  q.canonicalize();
  return Rational(std::move(q));
}

std::string Rational::str() const {
  if (is_integer()) return num_str();
  return num_str() + "/" + den_str();
}

Rational Rational::reciprocal() const {
  if (is_zero()) throw std::domain_error("reciprocal of zero");
  return Rational(mpq_class(1) / v_);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("rational division by zero");
  v_ /= o.v_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.str(); }

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }
Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace lel
