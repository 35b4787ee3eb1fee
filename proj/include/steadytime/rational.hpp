#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>

#include "steadytime/errors.hpp"

namespace steadytime {

/// Exact arbitrary-precision rational, used as the coefficient field
/// when closed (rounding-free) arithmetic is requested.
using Rational = mpq_class;

/// Parse a rational from "p/q", an integer string, or a decimal string
/// like "-0.125" (interpreted exactly in base 10).
inline Rational rational_from_string(const std::string& s) {
    if (s.empty()) throw DomainError("rational_from_string: empty string");
    auto dot = s.find('.');
    if (dot == std::string::npos) {
        Rational r;
        if (r.set_str(s, 10) != 0)
            throw DomainError("rational_from_string: cannot parse '" + s + "'");
        r.canonicalize();
        return r;
    }
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac_len = s.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+")
        throw DomainError("rational_from_string: cannot parse '" + s + "'");
    Rational num;
    if (num.set_str(digits, 10) != 0)
        throw DomainError("rational_from_string: cannot parse '" + s + "'");
    mpz_class den = 1;
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    Rational r(num.get_num(), den * num.get_den());
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline double to_double(const Rational& r) { return r.get_d(); }
inline double to_double(double x) { return x; }

/// Construct a field element from a double. Exact for Rational (the
/// binary value of the double is taken verbatim).
template <class T> T field_from_double(double x);
template <> inline double field_from_double<double>(double x) { return x; }
template <> inline Rational field_from_double<Rational>(double x) {
    return Rational(x);
}

template <class T> T field_from_int(long n);
template <> inline double field_from_int<double>(long n) { return double(n); }
template <> inline Rational field_from_int<Rational>(long n) { return Rational(n); }

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }
inline bool is_zero(double x) { return x == 0.0; }

inline Rational field_abs(const Rational& r) { return abs(r); }
inline double field_abs(double x) { return std::fabs(x); }

} // namespace steadytime
