#include "hlab/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "hlab/error.hpp"

namespace hlab {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

Rational parse_decimal(std::string_view text) {
  bool negative = false;
  std::string_view s = text;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  std::int64_t exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6) {
      throw InvalidArgument("not a rational literal: '" + std::string(text) + "'");
    }
    exponent = std::stoll(std::string(exp_part));
    if (exp_negative) exponent = -exponent;
    s = s.substr(0, e);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view fraction = s.substr(dot + 1);
    if ((whole.empty() && fraction.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!fraction.empty() && !all_digits(fraction))) {
      throw InvalidArgument("not a rational literal: '" + std::string(text) + "'");
    }
    digits = std::string(whole) + std::string(fraction);
    exponent -= static_cast<std::int64_t>(fraction.size());
  } else {
    if (!all_digits(s)) throw InvalidArgument("not a rational literal: '" + std::string(text) + "'");
    digits = std::string(s);
  }
  // A leading 0 would make GMP read the digits as octal.
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size()));
  if (digits.empty()) digits = "0";
  Rational value{BigInt(digits)};
  value *= pow(Rational(10), exponent);
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw InvalidArgument("empty rational literal");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_decimal(text.substr(0, slash));
    Rational den = parse_decimal(text.substr(slash + 1));
    if (den == 0) throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
    return num / den;
  }
  return parse_decimal(text);
}

std::string to_string(const Rational& q) { return q.str(); }

double to_double(const Rational& q) { return q.convert_to<double>(); }

Rational exact_from_double(double x) {
  if (!std::isfinite(x)) throw InvalidArgument("non-finite value has no exact rational form");
  int exp = 0;
  double mantissa = std::frexp(x, &exp);
  // 53 significant bits fit exactly in an int64 after scaling.
  auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  return Rational(scaled) * pow(Rational(2), static_cast<std::int64_t>(exp) - 53);
}

Rational pow(const Rational& base, std::int64_t exponent) {
  if (exponent < 0) {
    if (base == 0) throw InvalidArgument("zero raised to a negative power");
    return Rational(1) / pow(base, -exponent);
  }
  Rational result(1);
  Rational b = base;
  auto e = static_cast<std::uint64_t>(exponent);
  while (e != 0) {
    if (e & 1U) result *= b;
    e >>= 1U;
    if (e != 0) b *= b;
  }
  return result;
}

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

BigInt floor(const Rational& q) {
  BigInt num = boost::multiprecision::numerator(q);
  BigInt den = boost::multiprecision::denominator(q);
  BigInt quotient = num / den;  // truncates toward zero
  if (num < 0 && quotient * den != num) quotient -= 1;
  return quotient;
}

Rational frac(const Rational& q) { return q - Rational(floor(q)); }

}  // namespace hlab
