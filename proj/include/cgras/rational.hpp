#pragma once

// Exact rational scalar used by the symbolic and polyhedral layers.

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cgras {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1)
{
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Exact binary value of a finite double.
inline Rational rational_from_double(double v)
{
    if (!std::isfinite(v))
        throw std::domain_error("rational_from_double: non-finite value");
    return Rational(v);
}

inline double to_double(const Rational& r) { return r.get_d(); }

inline std::string to_string(const Rational& r) { return r.get_str(); }

/// Parses "3", "-2/7" or a decimal literal such as "0.125" exactly.
inline Rational parse_rational(std::string_view text)
{
    std::string s(text);
    if (s.empty())
        throw std::invalid_argument("empty rational literal");
    auto dot = s.find('.');
    auto exp = s.find_first_of("eE");
    if (dot == std::string::npos && exp == std::string::npos) {
        Rational r;
        if (r.set_str(s, 10) != 0)
            throw std::invalid_argument("bad rational literal '" + s + "'");
        if (r.get_den() == 0)
            throw std::invalid_argument("zero denominator in '" + s + "'");
        r.canonicalize();
        return r;
    }
    // decimal: mantissa digits with an optional exponent, converted exactly
    std::string mant = s.substr(0, exp);
    long e10 = 0;
    if (exp != std::string::npos) {
        try {
            e10 = std::stol(s.substr(exp + 1));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad exponent in '" + s + "'");
        }
    }
    bool neg = false;
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
        neg = mant[0] == '-';
        mant.erase(0, 1);
    }
    auto d = mant.find('.');
    std::string digits = mant;
    if (d != std::string::npos) {
        e10 -= static_cast<long>(mant.size() - d - 1);
        digits.erase(d, 1);
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("bad decimal literal '" + s + "'");
    mpz_class num(digits, 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(e10 < 0 ? -e10 : e10));
    Rational r = e10 < 0 ? Rational(num, scale) : Rational(num * scale);
    r.canonicalize();
    return neg ? Rational(-r) : r;
}

} // namespace cgras
