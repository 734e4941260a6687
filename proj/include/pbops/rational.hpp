#ifndef PBOPS_RATIONAL_HPP
#define PBOPS_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace pbops {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(double x) { return x; }

inline Integer int_pow(Integer base, unsigned exp) {
    Integer r = 1;
    while (exp) {
        if (exp & 1u) r *= base;
        base *= base;
        exp >>= 1u;
    }
    return r;
}

inline Integer factorial(unsigned n) {
    Integer r = 1;
    for (unsigned k = 2; k <= n; ++k) r *= k;
    return r;
}

inline Integer binomial(const Integer& n, unsigned k) {
    Integer num = 1, den = 1;
    for (unsigned j = 0; j < k; ++j) {
        num *= n - j;
        den *= j + 1;
    }
    return num / den;
}

} // namespace pbops

#endif
