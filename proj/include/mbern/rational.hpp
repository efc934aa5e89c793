#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

/*
 * Exact rational scalars.
 *
 * All core math runs on GMP rationals; floating point only shows up when a
 * value is rendered for humans. Text format is either "a/b" or a decimal
 * string, and decimals parse exactly ("0.3" is 3/10, "1e-3" is 1/1000).
 */
namespace mbern {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using RationalVector = std::vector<Rational>;

/** Thrown for any malformed numeric text. */
class ParseError : public std::invalid_argument
{
public:
    explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

namespace detail {

inline Integer pow10(unsigned e)
{
    Integer r = 1;
    for (unsigned i = 0; i < e; ++i) r *= 10;
    return r;
}

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline bool all_digits(std::string_view s)
{
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

/// Decimal digits to Integer; leading zeros are dropped so GMP does not read them as an octal prefix.
inline Integer from_digits(std::string_view digits)
{
    const auto first = digits.find_first_not_of('0');
    if (first == std::string_view::npos) return Integer(0);
    return Integer{std::string(digits.substr(first))};
}

inline Integer parse_integer(std::string_view s, std::string_view whole)
{
    bool neg = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) throw ParseError("not a rational: '" + std::string(whole) + "'");
    Integer v = from_digits(s);
    return neg ? Integer(-v) : v;
}

inline Rational parse_decimal(std::string_view s, std::string_view whole)
{
    bool neg = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp = s.substr(e + 1);
        s = s.substr(0, e);
        std::string_view digits = exp;
        if (!digits.empty() && (digits.front() == '+' || digits.front() == '-')) digits.remove_prefix(1);
        if (!all_digits(digits) || digits.size() > 6) throw ParseError("bad exponent in '" + std::string(whole) + "'");
        exponent = std::stol(std::string(exp));
    }
    std::string_view ip = s, fp;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        ip = s.substr(0, dot);
        fp = s.substr(dot + 1);
    }
    if (ip.empty() && fp.empty()) throw ParseError("not a rational: '" + std::string(whole) + "'");
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
        throw ParseError("not a rational: '" + std::string(whole) + "'");
    Integer num = from_digits(std::string(ip) + std::string(fp));
    exponent -= static_cast<long>(fp.size());
    Rational r = exponent >= 0 ? Rational(num * pow10(static_cast<unsigned>(exponent)))
                               : Rational(num, pow10(static_cast<unsigned>(-exponent)));
    return neg ? Rational(-r) : r;
}

} // namespace detail

/** Parses "a/b", "a", or a decimal string into an exact rational. */
inline Rational parse_rational(std::string_view text)
{
    std::string_view s = detail::trim(text);
    if (s.empty()) throw ParseError("empty rational");
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        Integer num = detail::parse_integer(detail::trim(s.substr(0, slash)), text);
        Integer den = detail::parse_integer(detail::trim(s.substr(slash + 1)), text);
        if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
        return Rational(num, den);
    }
    if (s.find_first_of(".eE") != std::string_view::npos) return detail::parse_decimal(s, text);
    return Rational(detail::parse_integer(s, text));
}

/** Canonical exact text: "a/b", or "a" when the denominator is 1. */
inline std::string format_rational(const Rational& r)
{
    const Integer& den = denominator(r);
    if (den == 1) return numerator(r).str();
    return numerator(r).str() + "/" + den.str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/** Rounds r to the nearest integer (halves away from zero). */
inline Integer round_nearest(const Rational& r)
{
    Integer num = numerator(r), den = denominator(r);
    bool neg = num < 0;
    if (neg) num = -num;
    Integer q = (2 * num + den) / (2 * den);
    return neg ? Integer(-q) : q;
}

/** Fixed-point rendering with `places` digits after the decimal point. */
inline std::string format_fixed(const Rational& r, unsigned places)
{
    Integer scaled = round_nearest(r * Rational(detail::pow10(places)));
    bool neg = scaled < 0;
    if (neg) scaled = -scaled;
    std::string digits = scaled.str();
    if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
    std::string out = neg ? "-" : "";
    out += digits.substr(0, digits.size() - places);
    if (places > 0) out += "." + digits.substr(digits.size() - places);
    if (out == "-0" || (neg && out.find_first_not_of("-0.") == std::string::npos)) out.erase(0, 1);
    return out;
}

/** True when r is the square of a rational; `root` receives the nonnegative root. */
inline bool exact_sqrt(const Rational& r, Rational& root)
{
    if (r < 0) return false;
    Integer n = numerator(r), d = denominator(r);
    Integer sn = boost::multiprecision::sqrt(n), sd = boost::multiprecision::sqrt(d);
    if (sn * sn != n || sd * sd != d) return false;
    root = Rational(sn, sd);
    return true;
}

/// Digits of the grid used when a square root has to be rounded.
inline constexpr unsigned kSqrtDigits = 40;

/**
 * Square root of a nonnegative rational: exact when r is a perfect square,
 * otherwise truncated onto a 10^-kSqrtDigits grid (absolute error < 10^-40
 * for the magnitudes used here, which are at most 1).
 */
inline Rational sqrt_rational(const Rational& r, unsigned digits = kSqrtDigits)
{
    if (r < 0) throw std::domain_error("sqrt of negative rational");
    Rational root;
    if (exact_sqrt(r, root)) return root;
    Integer scale = detail::pow10(digits);
    Integer n = numerator(r) * scale * scale / denominator(r);
    return Rational(boost::multiprecision::sqrt(n), scale);
}

} // namespace mbern
