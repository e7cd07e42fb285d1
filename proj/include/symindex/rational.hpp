#pragma once

#include <boost/rational.hpp>
#include <cmath>
#include <cstdint>
#include <string>

namespace symindex {

// Exact rational arithmetic for the counting layer. int64 is ample: numerators
// and denominators stay within products of small iterate periods.
using Rational = boost::rational<long long>;

inline double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

} // namespace symindex
