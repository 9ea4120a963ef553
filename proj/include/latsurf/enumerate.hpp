#pragma once

#include "latsurf/lattice.hpp"

#include <vector>

namespace latsurf {

struct EnumerateOptions {
    Int work_limit = 10'000'000;  // box-size threshold for the warning flag
    int chunks = 0;               // force a partition count (testing); 0 = auto
    bool force_serial = false;
};

struct EnumerationResult {
    std::vector<LatticeVector> vectors;
    bool work_limit_exceeded = false;
};

/// All characteristic c with Q(c,c) = h and max|c_i| <= bound, in
/// lexicographic order. The box scan runs in parallel when the
/// coordinates fit machine words; the result is independent of the
/// partitioning and identical to the serial reference kernel.
EnumerationResult enumerate_characteristic(const GramLattice& L, const Int& h,
                                           const Int& bound,
                                           const EnumerateOptions& opts = {});

/// Serial reference kernel, exact arithmetic throughout.
std::vector<LatticeVector> enumerate_box_serial(const GramLattice& L, const Int& h,
                                                const Int& bound);

/// OpenMP kernel. Chunks partition the outermost coordinate; any chunk
/// count yields the same output. Falls back to exact arithmetic when the
/// int64 magnitude guard fails.
std::vector<LatticeVector> enumerate_box_parallel(const GramLattice& L, const Int& h,
                                                  const Int& bound, int chunks = 0);

/// Complete list of characteristic c with Q(c,c) = h on a definite
/// lattice. No box parameter: the ellipsoid is finite. Lexicographic order.
std::vector<LatticeVector> characteristic_with_square_definite(const GramLattice& L,
                                                               const Int& h);

/// All integer z with (z + mu)^T gram (z + mu) = target for positive
/// definite gram. Backtracking over exact rational bounds.
std::vector<std::vector<Int>> shifted_ellipsoid_points(const Mat& gram,
                                                       const std::vector<Rat>& mu,
                                                       const Rat& target);

}  // namespace latsurf
