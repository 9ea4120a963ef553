#pragma once

#include "latsurf/numeric.hpp"

#include <cstddef>
#include <vector>

namespace latsurf {

// Dense integer matrix, row major. Small ranks, exact entries.
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<Int> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Int(0)) {}

    Int& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Int& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static Mat identity(int n);

    bool operator==(const Mat& other) const = default;
};

Mat mat_mul(const Mat& x, const Mat& y);
Mat mat_transpose(const Mat& x);
std::vector<Int> mat_vec(const Mat& m, const std::vector<Int>& v);

// Exact determinant (fraction-free Bareiss elimination).
Int det_bareiss(Mat m);

// Basis (as columns) of the lattice { x : a.x = 0 } for a nonzero functional a.
// The result is a saturated rank n-1 sublattice basis.
Mat kernel_of_functional(const std::vector<Int>& a);

// Signature data of a symmetric matrix over the rationals.
struct Inertia {
    int pos = 0;
    int neg = 0;
    int zero = 0;
};
Inertia rational_inertia(const Mat& symmetric);

// Solve m * x = rhs exactly over the rationals. Requires m square nonsingular.
std::vector<Rat> solve_rational(const Mat& m, const std::vector<Rat>& rhs);

}  // namespace latsurf
