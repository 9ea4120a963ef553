#include "latsurf/enumerate.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace latsurf {

namespace {

// candidate values for one coordinate: v in [-bound, bound], v = base mod 2
template <typename T>
std::vector<T> coordinate_values(const Int& bound, int base_parity) {
    std::vector<T> vals;
    Int start = -bound;
    if (mod_floor(start, 2) != base_parity) start += 1;
    for (Int v = start; v <= bound; v += 2) vals.push_back(static_cast<T>(v));
    return vals;
}

// Depth-first box scan. Tracks q = Q(prefix, prefix) incrementally;
// row_dot recomputation keeps the inner update O(rank).
template <typename T>
void scan_box(const std::vector<std::vector<T>>& gram,
              const std::vector<std::vector<T>>& values, const T& h, int depth,
              std::vector<T>& current, const T& q_acc,
              std::vector<LatticeVector>& out) {
    const int n = static_cast<int>(gram.size());
    if (depth == n) {
        if (q_acc == h) {
            std::vector<Int> coords(n);
            for (int i = 0; i < n; ++i) coords[i] = current[i];
            out.emplace_back(std::move(coords));
        }
        return;
    }
    T row_dot = 0;
    for (int j = 0; j < depth; ++j) row_dot += gram[depth][j] * current[j];
    for (const T& v : values[depth]) {
        current[depth] = v;
        T q_next = q_acc + gram[depth][depth] * v * v + 2 * v * row_dot;
        scan_box(gram, values, h, depth + 1, current, q_next, out);
    }
}

template <typename T>
std::vector<std::vector<T>> gram_as(const GramLattice& L) {
    const int n = L.rank();
    std::vector<std::vector<T>> g(n, std::vector<T>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g[i][j] = static_cast<T>(L.gram().at(i, j));
    return g;
}

// largest absolute value any partial sum can reach inside the scan
Int magnitude_ceiling(const GramLattice& L, const Int& bound) {
    Int sum_abs = 0;
    for (const Int& v : L.gram().a) sum_abs += abs_int(v);
    return 2 * sum_abs * bound * bound + 2;
}

bool int64_safe(const GramLattice& L, const Int& h, const Int& bound) {
    static const Int limit = (Int(1) << 62);
    return magnitude_ceiling(L, bound) < limit && abs_int(h) < limit &&
           bound < (Int(1) << 30);
}

}  // namespace

std::vector<LatticeVector> enumerate_box_serial(const GramLattice& L, const Int& h,
                                                const Int& bound) {
    if (bound < 0) throw std::invalid_argument("enumerate: bound must be nonnegative");
    const int n = L.rank();
    if (n == 0) {
        std::vector<LatticeVector> out;
        if (h == 0) out.emplace_back();
        return out;
    }
    LatticeVector base = find_characteristic(L);
    std::vector<std::vector<Int>> values(n);
    for (int i = 0; i < n; ++i) {
        values[i] = coordinate_values<Int>(bound, static_cast<int>(base.coords[i]));
        if (values[i].empty()) return {};
    }
    auto gram = gram_as<Int>(L);
    std::vector<Int> current(n, Int(0));
    std::vector<LatticeVector> out;
    scan_box<Int>(gram, values, h, 0, current, Int(0), out);
    return out;
}

std::vector<LatticeVector> enumerate_box_parallel(const GramLattice& L, const Int& h,
                                                  const Int& bound, int chunks) {
    if (bound < 0) throw std::invalid_argument("enumerate: bound must be nonnegative");
    const int n = L.rank();
    if (n == 0 || !int64_safe(L, h, bound)) return enumerate_box_serial(L, h, bound);

    LatticeVector base = find_characteristic(L);
    std::vector<std::vector<std::int64_t>> values(n);
    for (int i = 0; i < n; ++i) {
        values[i] =
            coordinate_values<std::int64_t>(bound, static_cast<int>(base.coords[i]));
        if (values[i].empty()) return {};
    }
    auto gram = gram_as<std::int64_t>(L);
    const std::int64_t target = static_cast<std::int64_t>(h);

    const int outer = static_cast<int>(values[0].size());
    if (chunks <= 0 || chunks > outer) chunks = outer;
    // contiguous outer-coordinate slices; concatenation in slice order is
    // already lexicographic
    std::vector<std::vector<LatticeVector>> partial(chunks);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int chunk = 0; chunk < chunks; ++chunk) {
        int lo = static_cast<int>(static_cast<long long>(chunk) * outer / chunks);
        int hi = static_cast<int>(static_cast<long long>(chunk + 1) * outer / chunks);
        std::vector<std::int64_t> current(n, 0);
        for (int idx = lo; idx < hi; ++idx) {
            std::int64_t v = values[0][idx];
            current[0] = v;
            std::int64_t q0 = gram[0][0] * v * v;
            if (n == 1) {
                if (q0 == target) {
                    std::vector<Int> coords{Int(v)};
                    partial[chunk].emplace_back(std::move(coords));
                }
            } else {
                scan_box<std::int64_t>(gram, values, target, 1, current, q0,
                                       partial[chunk]);
            }
        }
    }
    std::vector<LatticeVector> out;
    for (auto& p : partial)
        for (auto& v : p) out.push_back(std::move(v));
    return out;
}

EnumerationResult enumerate_characteristic(const GramLattice& L, const Int& h,
                                           const Int& bound,
                                           const EnumerateOptions& opts) {
    if (bound < 0) throw std::invalid_argument("enumerate: bound must be nonnegative");
    EnumerationResult result;

    Int box_size = 1;
    if (L.rank() > 0) {
        LatticeVector base = find_characteristic(L);
        for (int i = 0; i < L.rank(); ++i) {
            Int count = 0;
            Int start = -bound;
            if (mod_floor(start, 2) != base.coords[i]) start += 1;
            if (start <= bound) count = (bound - start) / 2 + 1;
            box_size *= count;
        }
    }
    result.work_limit_exceeded = box_size > opts.work_limit;

    result.vectors = opts.force_serial ? enumerate_box_serial(L, h, bound)
                                       : enumerate_box_parallel(L, h, bound, opts.chunks);
    return result;
}

std::vector<std::vector<Int>> shifted_ellipsoid_points(const Mat& gram,
                                                       const std::vector<Rat>& mu,
                                                       const Rat& target) {
    const int n = gram.rows;
    std::vector<std::vector<Int>> out;
    if (n == 0) {
        if (target == 0) out.emplace_back();
        return out;
    }
    if (target < 0) return out;

    // rational LDL^T; positive definiteness gives nonzero pivots
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = Rat(gram.at(i, j));
    std::vector<std::vector<Rat>> l(n, std::vector<Rat>(n));
    std::vector<Rat> d(n);
    for (int k = 0; k < n; ++k) {
        Rat dk = a[k][k];
        for (int j = 0; j < k; ++j) dk -= l[k][j] * l[k][j] * d[j];
        if (dk <= 0)
            throw std::invalid_argument(
                "shifted_ellipsoid_points: form is not positive definite");
        d[k] = dk;
        l[k][k] = 1;
        for (int i = k + 1; i < n; ++i) {
            Rat v = a[i][k];
            for (int j = 0; j < k; ++j) v -= l[i][j] * l[k][j] * d[j];
            l[i][k] = v / dk;
        }
    }

    // (z+mu)^T G (z+mu) = sum_k d_k y_k^2, y_k = (z_k+mu_k) + sum_{j>k} L_jk (z_j+mu_j)
    constexpr long long node_cap = 1LL << 26;
    long long nodes = 0;
    std::vector<Int> z(n);
    auto descend = [&](auto&& self, int k, const Rat& rem) -> void {
        if (++nodes > node_cap)
            throw std::runtime_error("shifted_ellipsoid_points: work limit exceeded");
        if (k < 0) {
            if (rem == 0) out.push_back(z);
            return;
        }
        Rat offset = mu[k];
        for (int j = k + 1; j < n; ++j) offset += l[j][k] * (Rat(z[j]) + mu[j]);
        // d_k (z_k + offset)^2 <= rem, solved exactly over the rationals
        Rat radius2 = rem / d[k];
        Int p = boost::multiprecision::numerator(offset);
        Int q = boost::multiprecision::denominator(offset);
        Int u = boost::multiprecision::numerator(radius2);
        Int v = boost::multiprecision::denominator(radius2);
        Int w_max = rat_sqrt_floor(u * q * q, v);
        Int lo = div_ceil(-w_max - p, q);
        Int hi = div_floor(w_max - p, q);
        for (Int t = lo; t <= hi; ++t) {
            z[k] = t;
            Rat y = Rat(t) + offset;
            self(self, k - 1, rem - d[k] * y * y);
        }
    };
    descend(descend, n - 1, target);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<LatticeVector> characteristic_with_square_definite(const GramLattice& L,
                                                               const Int& h) {
    const int n = L.rank();
    if (n == 0) {
        std::vector<LatticeVector> out;
        if (h == 0) out.emplace_back();
        return out;
    }
    Signature sig = signature(L);
    if (sig.b_plus != 0 && sig.b_minus != 0)
        throw std::invalid_argument(
            "characteristic_with_square_definite: lattice is indefinite");

    const bool negative = sig.b_plus == 0;
    Mat g = L.gram();
    Int target_sq = h;
    if (negative) {
        for (auto& v : g.a) v = -v;
        target_sq = -h;
    }
    if (target_sq < 0) return {};

    LatticeVector base = find_characteristic(L);
    std::vector<Rat> mu(n);
    for (int i = 0; i < n; ++i) mu[i] = Rat(base.coords[i], 2);
    auto pts = shifted_ellipsoid_points(g, mu, Rat(target_sq, 4));

    std::vector<LatticeVector> out;
    out.reserve(pts.size());
    for (const auto& z : pts) {
        std::vector<Int> c(n);
        for (int i = 0; i < n; ++i) c[i] = base.coords[i] + 2 * z[i];
        out.emplace_back(std::move(c));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace latsurf
