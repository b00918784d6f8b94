#include "crn/types.hpp"

#include <cctype>
#include <cmath>
#include <gmp.h>

namespace crn {

std::string to_string(const Rational& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// BigInt's string constructor treats a leading 0 as octal.
BigInt decimal(std::string_view digits) {
  while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
  return BigInt{std::string(digits)};
}

BigInt parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw InvalidInput("not an integer: '" + std::string(s) + "'");
  BigInt v = decimal(s);
  return negative ? BigInt(-v) : v;
}

BigInt pow10(unsigned k) {
  BigInt r = 1;
  for (unsigned i = 0; i < k; ++i) r *= 10;
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw InvalidInput("empty number");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(text.substr(0, slash));
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) throw InvalidInput("bad denominator in '" + std::string(text) + "'");
    BigInt den = decimal(den_text);
    if (den == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }

  std::string_view mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    BigInt ex = parse_integer(text.substr(e + 1));
    if (abs(ex) > 4096) throw InvalidInput("exponent out of range in '" + std::string(text) + "'");
    exponent = ex.convert_to<long>();
  }

  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
    negative = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string_view whole = mantissa, frac;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    whole = mantissa.substr(0, dot);
    frac = mantissa.substr(dot + 1);
  }
  if (whole.empty() && frac.empty()) throw InvalidInput("not a number: '" + std::string(text) + "'");
  if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)))
    throw InvalidInput("not a number: '" + std::string(text) + "'");

  BigInt digits = decimal(std::string(whole) + std::string(frac));
  long scale = static_cast<long>(frac.size()) - exponent;
  Rational r = scale >= 0 ? Rational(digits, pow10(static_cast<unsigned>(scale)))
                          : Rational(digits * pow10(static_cast<unsigned>(-scale)));
  return negative ? Rational(-r) : r;
}

Rational power(const Rational& base, long exponent) {
  if (exponent == 0) return Rational(1);
  if (base == 0) {
    if (exponent < 0) throw std::domain_error("zero raised to a negative power");
    return Rational(0);
  }
  unsigned long k = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
  BigInt num = boost::multiprecision::pow(numerator(base), static_cast<unsigned>(k));
  BigInt den = boost::multiprecision::pow(denominator(base), static_cast<unsigned>(k));
  return exponent > 0 ? Rational(num, den) : Rational(den, num);
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

double log_of(const Rational& value) {
  if (value <= 0) throw std::domain_error("log of a non-positive rational");
  auto log_int = [](const BigInt& z) {
    long exp2 = 0;
    double mant = mpz_get_d_2exp(&exp2, z.backend().data());
    return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
  };
  return log_int(numerator(value)) - log_int(denominator(value));
}

Rational to_rational(double value) {
  if (!std::isfinite(value)) throw InvalidInput("non-finite value");
  return Rational(value);
}

}  // namespace crn
