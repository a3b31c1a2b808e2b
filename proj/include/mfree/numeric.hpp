#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <vector>

namespace mfree {

// Exact arbitrary-precision scalars.  All combinatorial counts and all
// polynomial coefficients in this library use these; doubles appear only at
// the measure/simulator boundary where spectra are intrinsically numeric.
using integer  = boost::multiprecision::cpp_int;
using rational = boost::multiprecision::cpp_rational;

inline double to_double(const rational& q) { return q.convert_to<double>(); }
inline double to_double(const integer& n) { return n.convert_to<double>(); }

// Euclidean inner product of two real coefficient vectors.
inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// n * (n-1) * ... * (n-b+1); equals 0 once b exceeds a non-negative n.
inline integer falling_factorial(const integer& n, unsigned b) {
    integer r = 1;
    for (unsigned i = 0; i < b; ++i) r *= n - i;
    return r;
}

// Number of non-crossing (equivalently, non-nesting pairings of 2k points
// counted without depth restriction) partitions: C(2k, k) / (k + 1).
inline integer catalan_number(unsigned k) {
    integer num = 1, den = 1;
    for (unsigned i = 1; i <= k; ++i) {
        num *= k + i;
        den *= i;
    }
    integer c = num / den / (k + 1);
    return c;
}

} // namespace mfree
