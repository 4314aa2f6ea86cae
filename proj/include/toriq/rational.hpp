#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <string>

#include "toriq/errors.hpp"

namespace toriq {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int numerator(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int denominator(const Rat& q) { return boost::multiprecision::denominator(q); }

inline int sign(const Int& v) { return v.sign(); }
inline int sign(const Rat& q) { return q.sign(); }

inline Int abs_int(const Int& v) { return v < 0 ? Int(-v) : v; }

/// Floor division for arbitrary-precision rationals.
inline Int floor_rat(const Rat& q) {
    Int n = numerator(q), d = denominator(q);
    Int quo = n / d; // truncates toward zero
    if (n < 0 && quo * d != n) --quo;
    return quo;
}

inline Int ceil_rat(const Rat& q) { return -floor_rat(-q); }

inline Int gcd_int(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm_int(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

/// 2^(-k) as an exact rational.
inline Rat pow2_neg(unsigned k) { return Rat(Int(1), Int(1) << k); }

/// Parses "p/q" or "p" (optionally signed). Throws ParseError on junk input.
inline Rat parse_rat(const std::string& s) {
    auto is_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            if (!is_int(s)) throw ParseError("not a rational: '" + s + "'");
            return Rat(Int(s));
        }
        const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!is_int(num) || !is_int(den)) throw ParseError("not a rational: '" + s + "'");
        Int d(den);
        if (d == 0) throw ParseError("zero denominator: '" + s + "'");
        return Rat(Int(num), d);
    } catch (const std::runtime_error&) {
        throw ParseError("not a rational: '" + s + "'");
    }
}

/// Canonical serialization, always "p/q" with positive q in lowest terms.
inline std::string rat_to_string(const Rat& q) {
    return numerator(q).str() + "/" + denominator(q).str();
}

/// Nearest-double conversion, accurate to about 1 ulp for any magnitude.
inline double rat_to_double(const Rat& q) {
    const int s = sign(q);
    if (s == 0) return 0.0;
    Int n = abs_int(numerator(q)), d = denominator(q);
    // Scale so the integer quotient carries ~64 significant bits, divide,
    // then undo the scaling in the exponent.
    const long nb = static_cast<long>(boost::multiprecision::msb(n));
    const long db = static_cast<long>(boost::multiprecision::msb(d));
    long shift = 64 - (nb - db);
    if (shift > 0)
        n <<= static_cast<unsigned>(shift);
    else if (shift < 0) {
        d <<= static_cast<unsigned>(-shift);
    }
    Int quo = n / d;
    const Int rem = n - quo * d;
    if (2 * rem >= d) ++quo; // round to nearest
    const double m = quo.convert_to<double>();
    return std::ldexp(s < 0 ? -m : m, static_cast<int>(-shift));
}

} // namespace toriq
