#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace minoramp {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Precondition or input failure reported to the caller.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A state that the constructive arguments rule out. Seeing one means a bug
/// (or, in relaxed mode, parameters outside the range the arguments cover).
class InvariantViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  if (den == 0) throw Error("zero denominator");
  return Rational(BigInt(num), BigInt(den));
}

inline BigInt numerator_of(const Rational& r) {
  return boost::multiprecision::numerator(r);
}
inline BigInt denominator_of(const Rational& r) {
  return boost::multiprecision::denominator(r);
}

inline BigInt floor_big(const Rational& r) {
  BigInt n = numerator_of(r), d = denominator_of(r);
  BigInt q = n / d;  // truncates toward zero
  if (n % d != 0 && n < 0) q -= 1;
  return q;
}

inline BigInt ceil_big(const Rational& r) {
  BigInt n = numerator_of(r), d = denominator_of(r);
  BigInt q = n / d;
  if (n % d != 0 && n > 0) q += 1;
  return q;
}

namespace detail {
inline std::int64_t to_i64_saturating(const BigInt& v) {
  static const BigInt kMax = BigInt(std::numeric_limits<std::int64_t>::max());
  static const BigInt kMin = BigInt(std::numeric_limits<std::int64_t>::min());
  if (v > kMax) return std::numeric_limits<std::int64_t>::max();
  if (v < kMin) return std::numeric_limits<std::int64_t>::min();
  return v.convert_to<std::int64_t>();
}
}  // namespace detail

/// Integer floor/ceil clamped to int64. Used to turn rational thresholds
/// into integer comparisons against degree and neighbor counts.
inline std::int64_t floor_i64(const Rational& r) { return detail::to_i64_saturating(floor_big(r)); }
inline std::int64_t ceil_i64(const Rational& r) { return detail::to_i64_saturating(ceil_big(r)); }

/// Canonical "p/q" form (q >= 1, always written).
inline std::string to_string(const Rational& r) {
  return numerator_of(r).str() + "/" + denominator_of(r).str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Parses "p/q", "p" or a plain decimal such as "-0.125" exactly.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw Error("malformed rational '" + std::string(text) + "'");
  };
  auto is_digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
  if (text.empty()) return fail();

  bool negative = false;
  std::string_view body = text;
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  Rational value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto p = body.substr(0, slash), q = body.substr(slash + 1);
    if (!is_digits(p) || !is_digits(q)) return fail();
    BigInt den{std::string(q)};
    if (den == 0) throw Error("zero denominator in '" + std::string(text) + "'");
    value = Rational(BigInt(std::string(p)), den);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto ip = body.substr(0, dot), fp = body.substr(dot + 1);
    if (ip.empty() && fp.empty()) return fail();
    if ((!ip.empty() && !is_digits(ip)) || (!fp.empty() && !is_digits(fp))) return fail();
    BigInt whole = ip.empty() ? BigInt(0) : BigInt(std::string(ip));
    BigInt frac = fp.empty() ? BigInt(0) : BigInt(std::string(fp));
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(fp.size()));
    value = Rational(whole * scale + frac, scale);
  } else {
    if (!is_digits(body)) return fail();
    value = Rational(BigInt(std::string(body)));
  }
  return negative ? Rational(-value) : value;
}

inline Rational pow2(std::int64_t exponent) {
  if (exponent >= 0) return Rational(BigInt(1) << static_cast<unsigned>(exponent));
  return Rational(BigInt(1), BigInt(1) << static_cast<unsigned>(-exponent));
}

}  // namespace minoramp
