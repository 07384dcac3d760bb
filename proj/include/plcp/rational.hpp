#pragma once

// Exact rational scalars backed by GMP.
//
// mpq_class keeps every value canonical (positive denominator, reduced
// fraction) after each arithmetic operation, so equality and sign tests are
// exact and cheap.

#include <gmpxx.h>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace plcp {

using Rational = mpq_class;
using Integer = mpz_class;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline int sign(const Rational& x) { return sgn(x); }

inline Rational pow_rational(const Rational& base, unsigned exponent) {
  Rational result = 1;
  for (unsigned k = 0; k < exponent; ++k) result *= base;
  return result;
}

namespace detail {

inline bool is_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

inline Integer parse_integer(std::string_view s, std::string_view whole) {
  std::string_view body = s;
  if (!body.empty() && (body.front() == '+' || body.front() == '-'))
    body.remove_prefix(1);
  if (!is_digits(body))
    throw ParseError("malformed rational '" + std::string(whole) + "'");
  std::string text(s.front() == '+' ? s.substr(1) : s);
  return Integer(text, 10);
}

// Decimal literal with optional fraction and exponent, e.g. "-1.25e-3".
inline Rational parse_decimal(std::string_view s) {
  std::string_view whole = s;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = s.substr(e + 1);
    Integer ev = parse_integer(exp_text.empty() ? std::string_view("x") : exp_text, whole);
    if (!ev.fits_slong_p() || abs(ev) > 100000)
      throw ParseError("exponent out of range in '" + std::string(whole) + "'");
    exponent = ev.get_si();
    s = s.substr(0, e);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    if ((int_part.empty() && frac_part.empty()) ||
        (!int_part.empty() && !is_digits(int_part)) ||
        (!frac_part.empty() && !is_digits(frac_part)))
      throw ParseError("malformed rational '" + std::string(whole) + "'");
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    if (!is_digits(s)) throw ParseError("malformed rational '" + std::string(whole) + "'");
    digits = std::string(s);
  }
  if (digits.empty()) digits = "0";
  Rational value(Integer(digits, 10));
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  if (exponent < 0)
    value /= Rational(scale);
  else
    value *= Rational(scale);
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

}  // namespace detail

/// Parses "p/q", an integer, or a decimal literal such as "0.125" or "1e-9".
inline Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty rational");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = detail::parse_integer(text.substr(0, slash), text);
    std::string_view den_text = text.substr(slash + 1);
    if (!den_text.empty() && den_text.front() == '-')
      throw ParseError("negative denominator in '" + std::string(text) + "'");
    Integer den = detail::parse_integer(den_text.empty() ? std::string_view("x") : den_text, text);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  return detail::parse_decimal(text);
}

/// Canonical "p/q" text; integers print without a denominator.
inline std::string to_string(const Rational& x) { return x.get_str(10); }

}  // namespace plcp
