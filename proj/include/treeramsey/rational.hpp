#pragma once

// Exact rational arithmetic. Weight-function feasibility and extremality
// slack comparisons are defined by strict inequalities at exact optima, so
// nothing in this library compares through floating point.

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace treeramsey {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline std::string to_string(const Rational& r) {
    return r.str();
}

// Accepts "p", "p/q" and plain decimal strings like "0.01".
inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        BigInt p(s.substr(0, slash));
        BigInt q(s.substr(slash + 1));
        if (q == 0) throw std::invalid_argument("rational with zero denominator: " + s);
        return Rational(p, q);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        BigInt p(digits);
        BigInt q = 1;
        for (std::size_t i = dot + 1; i < s.size(); ++i) q *= 10;
        return Rational(p, q);
    }
    return Rational(BigInt(s));
}

inline long ceil_to_long(const Rational& r) {
    BigInt num = numerator(r), den = denominator(r);
    BigInt q = num / den;
    if (num % den != 0 && num > 0) ++q;
    return q.convert_to<long>();
}

inline long floor_to_long(const Rational& r) {
    BigInt num = numerator(r), den = denominator(r);
    BigInt q = num / den;
    if (num % den != 0 && num < 0) --q;
    return q.convert_to<long>();
}

} // namespace treeramsey
