#include "latsurf/numeric.hpp"

namespace latsurf {

Int rat_sqrt_floor(const Int& num, const Int& den) {
    Int k = isqrt_floor(num / den);
    // integer division may under- or overshoot the rational floor by one
    while ((k + 1) * (k + 1) * den <= num) ++k;
    while (k > 0 && k * k * den > num) --k;
    return k;
}

ExtGcd ext_gcd(Int a, Int b) {
    Int old_r = a, r = b;
    Int old_s = 1, s = 0;
    Int old_t = 0, t = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r; old_r = r; r = tmp;
        tmp = old_s - q * s; old_s = s; s = tmp;
        tmp = old_t - q * t; old_t = t; t = tmp;
    }
    if (old_r < 0) { old_r = -old_r; old_s = -old_s; old_t = -old_t; }
    return {old_r, old_s, old_t};
}

BezoutChain bezout_chain(const std::vector<Int>& values) {
    const size_t n = values.size();
    BezoutChain result;
    result.g = 0;
    result.coeffs.assign(n, Int(0));
    for (size_t i = 0; i < n; ++i) {
        if (values[i] == 0) continue;
        if (result.g == 0) {
            result.g = abs_int(values[i]);
            result.coeffs[i] = values[i] < 0 ? -1 : 1;
            continue;
        }
        ExtGcd e = ext_gcd(result.g, values[i]);
        for (size_t j = 0; j < i; ++j) result.coeffs[j] *= e.x;
        result.coeffs[i] = e.y;
        result.g = e.g;
    }
    return result;
}

}  // namespace latsurf
