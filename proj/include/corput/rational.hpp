#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "corput/errors.hpp"

namespace corput {

// Exact arithmetic carrier shared by every module. cpp_rational keeps values
// in lowest terms with a positive denominator, which is exactly the invariant
// the rest of the library relies on.
using BigInt   = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Rational make_rational(BigInt n, BigInt d) {
    if (d == 0) throw ValidationError("rational denominator must be nonzero");
    // The pair constructor reduces to lowest terms but rejects negative
    // denominators outright, so normalize the sign first.
    if (d < 0) {
        n = -n;
        d = -d;
    }
    return Rational(std::move(n), std::move(d));
}

// Round-to-nearest-ish conversion. The quotient is computed with ~128
// significant bits before the single rounding to double, so the result is
// within a couple of ulp of the true value regardless of operand size.
inline double to_double(const Rational& q) {
    using boost::multiprecision::msb;
    BigInt n = num(q);
    if (n == 0) return 0.0;
    const bool neg = n < 0;
    if (neg) n = -n;
    const BigInt& d = den(q);
    const long bits = static_cast<long>(msb(n)) - static_cast<long>(msb(d));
    const long shift = 128 - bits;
    BigInt scaled = shift >= 0 ? BigInt(n << shift) : BigInt(n >> -shift);
    const double x = BigInt(scaled / d).convert_to<double>();
    const double out = std::ldexp(x, static_cast<int>(-shift));
    return neg ? -out : out;
}

// "num/den", always with the denominator, e.g. "0/1", "3/4", "-7/18".
inline std::string to_fraction_string(const Rational& q) {
    return num(q).str() + "/" + den(q).str();
}

namespace detail {

inline BigInt parse_bigint(std::string_view s) {
    if (s.empty()) throw ValidationError("empty integer literal");
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    const bool neg = s[0] == '-';
    if (i == s.size()) throw ValidationError("bare sign is not an integer");
    for (std::size_t j = i; j < s.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(s[j])))
            throw ValidationError("bad digit in integer literal: " + std::string(s));
    while (i + 1 < s.size() && s[i] == '0') ++i; // cpp_int reads a leading 0 as octal
    BigInt v{std::string(s.substr(i))};
    return neg ? BigInt(-v) : v;
}

} // namespace detail

// Accepts "p/q", plain integers, and decimals with an optional exponent
// ("0.25", "-1.5e-3"). Everything parses to an exact rational.
inline Rational parse_rational(std::string_view s) {
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        BigInt n = detail::parse_bigint(s.substr(0, slash));
        BigInt d = detail::parse_bigint(s.substr(slash + 1));
        return make_rational(std::move(n), std::move(d));
    }
    bool neg = false;
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
    std::string digits;
    long frac_digits = 0;
    long exponent = 0;
    bool seen_digit = false, seen_dot = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits += c;
            seen_digit = true;
            if (seen_dot) ++frac_digits;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else if ((c == 'e' || c == 'E') && seen_digit) {
            exponent = static_cast<long>(detail::parse_bigint(s.substr(i + 1)).convert_to<long long>());
            break;
        } else {
            throw ValidationError("cannot parse rational literal: " + std::string(s));
        }
    }
    if (!seen_digit) throw ValidationError("cannot parse rational literal: " + std::string(s));
    const std::size_t nz = digits.find_first_not_of('0');
    BigInt n(nz == std::string::npos ? "0" : digits.substr(nz));
    if (neg) n = -n;
    const long net = exponent - frac_digits;
    BigInt p10 = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(net < 0 ? -net : net));
    return net >= 0 ? Rational(n * p10) : make_rational(std::move(n), std::move(p10));
}

inline Rational pow_rational(const Rational& q, unsigned e) {
    Rational out(1);
    Rational base = q;
    for (unsigned k = e; k; k >>= 1) {
        if (k & 1) out *= base;
        if (k > 1) base *= base;
    }
    return out;
}

} // namespace corput
