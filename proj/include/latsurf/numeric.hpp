#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

namespace latsurf {

// All lattice arithmetic is exact. Integers are arbitrary precision,
// rationals appear only inside the inertia/ellipsoid computations.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

inline Int gcd_int(const Int& a, const Int& b) {
    return boost::multiprecision::gcd(a, b);
}

// Remainder normalized to [0, m) for m > 0.
inline Int mod_floor(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += abs_int(m);
    return r;
}

inline Int div_floor(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline Int div_ceil(const Int& a, const Int& b) {
    return -div_floor(-a, b);
}

// floor(sqrt(x)), x >= 0
inline Int isqrt_floor(const Int& x) {
    return boost::multiprecision::sqrt(x);
}

// largest k >= 0 with k^2 <= num/den (num >= 0, den > 0)
Int rat_sqrt_floor(const Int& num, const Int& den);

// g = gcd of |values|, with Bezout coefficients: sum coeffs[i]*values[i] = g.
// All-zero input gives g = 0, coeffs = 0.
struct BezoutChain {
    Int g;
    std::vector<Int> coeffs;
};
BezoutChain bezout_chain(const std::vector<Int>& values);

// extended gcd: returns g = gcd(a,b) and x, y with a*x + b*y = g
struct ExtGcd {
    Int g, x, y;
};
ExtGcd ext_gcd(Int a, Int b);

}  // namespace latsurf
