#include "permlab/rational.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "permlab/error.hpp"

namespace permlab {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::EmptySupport: return "EmptySupport";
    case ErrorCode::SizeGuard: return "SizeGuard";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidPeel: return "InvalidPeel";
    case ErrorCode::SupportViolation: return "SupportViolation";
    case ErrorCode::NonIntegral: return "NonIntegral";
    case ErrorCode::NoConvergence: return "NoConvergence";
  }
  return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw Error(ErrorCode::InvalidInput, "not an integer: '" + std::string(s) + "'");
  }
  Integer value(std::string(s), 10);
  return negative ? Integer(-value) : value;
}

// Decimal with optional fraction and exponent, parsed exactly.
Rational parse_decimal(std::string_view s) {
  const std::string original(s);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    exponent = parse_integer(s.substr(e + 1)).get_si();
    s = s.substr(0, e);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw Error(ErrorCode::InvalidInput, "not a number: '" + original + "'");
    }
    digits = std::string(whole) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  } else {
    if (!all_digits(s)) throw Error(ErrorCode::InvalidInput, "not a number: '" + original + "'");
    digits = std::string(s);
  }
  Rational value(Integer(digits, 10));
  Integer ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  if (exponent >= 0) {
    value *= ten_pow;
  } else {
    value /= ten_pow;
  }
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw Error(ErrorCode::InvalidInput, "empty number");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw Error(ErrorCode::InvalidInput, "zero denominator: '" + std::string(text) + "'");
    Rational value(num, den);
    value.canonicalize();
    return value;
  }
  return parse_decimal(text);
}

std::string to_string(const Rational& value) {
  Rational canonical(value);
  canonical.canonicalize();
  return canonical.get_str(10);
}

std::string to_string(const Integer& value) { return value.get_str(10); }

Integer factorial(unsigned long k) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), k);
  return out;
}

Integer pow(const Integer& base, unsigned long exponent) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

Rational pow(const Rational& base, long exponent) {
  const unsigned long e = static_cast<unsigned long>(std::labs(exponent));
  Rational out(pow(Integer(base.get_num()), e), pow(Integer(base.get_den()), e));
  if (exponent < 0) {
    if (out == 0) throw Error(ErrorCode::InvalidInput, "zero to a negative power");
    out = 1 / out;
  }
  out.canonicalize();
  return out;
}

double log_of(const Integer& value) {
  if (value <= 0) return -std::numeric_limits<double>::infinity();
  long exp2 = 0;
  const double mantissa = mpz_get_d_2exp(&exp2, value.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exp2) * std::numbers::ln2;
}

double log_of(const Rational& value) {
  if (value <= 0) return -std::numeric_limits<double>::infinity();
  return log_of(Integer(value.get_num())) - log_of(Integer(value.get_den()));
}

double to_double(const Rational& value) {
  if (value == 0) return 0.0;
  const double direct = value.get_d();
  if (std::isfinite(direct) && std::fpclassify(direct) == FP_NORMAL) return direct;
  const double magnitude = std::exp(log_of(abs(value)));
  return value < 0 ? -magnitude : magnitude;
}

}  // namespace permlab
