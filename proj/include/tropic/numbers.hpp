// numbers.hpp — the two number kinds every computation path commits to.
//
// All quantities in this library are either exact rationals (Rational, backed
// by boost::multiprecision) or IEEE doubles.  A computation never mixes the
// two: templates are instantiated per kind, so exact tie detection can rely on
// genuine equality while the floating path uses one documented tolerance.
//
//   number_traits<Rational>  — exact: ties are ==, parsing of "p/q" and
//                              decimal strings is exact, formatting is "p/q".
//   number_traits<double>    — inexact: ties use a relative tolerance of 1e-9,
//                              formatting round-trips (17 significant digits).

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <string_view>

#include "tropic/errors.hpp"

namespace tropic {

// Expression templates are switched off so arithmetic yields the number type
// itself; generic code instantiates identically for double and Rational.
using BigInt =
    boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                  boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<
        boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

namespace detail {

inline BigInt parse_big_int(std::string_view text, std::string_view whole) {
  if (text.empty())
    throw ParseError("empty integer in number '" + std::string(whole) + "'");
  std::size_t i = (text[0] == '+' || text[0] == '-') ? 1 : 0;
  if (i == text.size())
    throw ParseError("sign without digits in number '" + std::string(whole) + "'");
  for (std::size_t j = i; j < text.size(); ++j)
    if (text[j] < '0' || text[j] > '9')
      throw ParseError("invalid digit in number '" + std::string(whole) + "'");
  return BigInt(std::string(text));
}

inline BigInt pow10(long exp) {
  BigInt r(1);
  for (long i = 0; i < exp; ++i) r *= 10;
  return r;
}

}  // namespace detail

// Exact parser for the textual number forms accepted in exact mode:
// integers ("-3"), fractions ("5/12"), and decimal strings ("0.25", "1.5e-3")
// which are read as exact decimal fractions.
inline Rational parse_rational(std::string_view text) {
  if (text.empty()) throw ParseError("empty number");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = detail::parse_big_int(text.substr(0, slash), text);
    BigInt den = detail::parse_big_int(text.substr(slash + 1), text);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }

  std::string_view mantissa = text;
  long exp10 = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view etext = text.substr(e + 1);
    BigInt eval = detail::parse_big_int(etext, text);
    if (eval > 6000 || eval < -6000)
      throw ParseError("exponent out of range in '" + std::string(text) + "'");
    exp10 = eval.convert_to<long>();
    mantissa = text.substr(0, e);
  }

  BigInt scaled;
  long frac_digits = 0;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    std::string_view whole = mantissa.substr(0, dot);
    std::string_view frac = mantissa.substr(dot + 1);
    if (frac.empty())
      throw ParseError("trailing decimal point in '" + std::string(text) + "'");
    bool negative = !whole.empty() && whole[0] == '-';
    BigInt wpart = whole.empty() || whole == "-" || whole == "+"
                       ? BigInt(0)
                       : detail::parse_big_int(whole, text);
    BigInt fpart = detail::parse_big_int(frac, text);
    if (fpart < 0) throw ParseError("misplaced sign in '" + std::string(text) + "'");
    frac_digits = static_cast<long>(frac.size());
    BigInt mag = abs(wpart) * detail::pow10(frac_digits) + fpart;
    scaled = negative ? -mag : mag;
  } else {
    scaled = detail::parse_big_int(mantissa, text);
  }

  Rational value(scaled, detail::pow10(frac_digits));
  if (exp10 > 0)
    value *= Rational(detail::pow10(exp10));
  else if (exp10 < 0)
    value /= Rational(detail::pow10(-exp10));
  return value;
}

// Canonical text form: "p" for integers, "p/q" otherwise (q > 0, reduced).
inline std::string to_string(const Rational& value) { return value.str(); }

inline std::string to_string(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

template <class R>
struct number_traits;

template <>
struct number_traits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* kind_name = "exact";

  static Rational from_string(std::string_view text) { return parse_rational(text); }
  static double to_double(const Rational& value) { return value.convert_to<double>(); }
  static bool finite(const Rational&) { return true; }
  // Exact mode: a tie is an equality.
  static bool tie_equal(const Rational& a, const Rational& b) { return a == b; }
};

template <>
struct number_traits<double> {
  static constexpr bool exact = false;
  static constexpr const char* kind_name = "floating";
  // Relative tie tolerance; jump classification near ties may differ from
  // exact mode (documented escape hatch for irrational inputs like ln 3/2).
  static constexpr double tie_tolerance = 1e-9;

  static double from_string(std::string_view text) {
    // Accept the exact-mode forms too, so one file can be read either way.
    return parse_rational(text).convert_to<double>();
  }
  static double to_double(double value) { return value; }
  static bool finite(double value) { return std::isfinite(value); }
  static bool tie_equal(double a, double b) {
    double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
    return std::fabs(a - b) <= tie_tolerance * scale;
  }
};

template <class R>
concept NumberKind = requires { number_traits<R>::exact; };

}  // namespace tropic
