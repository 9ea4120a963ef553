#include "latsurf/matrix.hpp"

#include <stdexcept>
#include <utility>

namespace latsurf {

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Mat mat_mul(const Mat& x, const Mat& y) {
    if (x.cols != y.rows) throw std::invalid_argument("mat_mul: dimension mismatch");
    Mat r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const Int& xik = x.at(i, k);
            if (xik == 0) continue;
            for (int j = 0; j < y.cols; ++j) r.at(i, j) += xik * y.at(k, j);
        }
    return r;
}

Mat mat_transpose(const Mat& x) {
    Mat r(x.cols, x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r.at(j, i) = x.at(i, j);
    return r;
}

std::vector<Int> mat_vec(const Mat& m, const std::vector<Int>& v) {
    if (static_cast<int>(v.size()) != m.cols)
        throw std::invalid_argument("mat_vec: dimension mismatch");
    std::vector<Int> r(m.rows, Int(0));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            if (m.at(i, j) != 0) r[i] += m.at(i, j) * v[j];
    return r;
}

Int det_bareiss(Mat m) {
    if (m.rows != m.cols) throw std::invalid_argument("det_bareiss: matrix not square");
    const int n = m.rows;
    if (n == 0) return 1;
    Int sign = 1, prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m.at(k, k) == 0) {
            int swap_row = -1;
            for (int i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) { swap_row = i; break; }
            if (swap_row < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(swap_row, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
        prev = m.at(k, k);
    }
    return sign * m.at(n - 1, n - 1);
}

Mat kernel_of_functional(const std::vector<Int>& a) {
    const int n = static_cast<int>(a.size());
    std::vector<int> support;
    for (int i = 0; i < n; ++i)
        if (a[i] != 0) support.push_back(i);
    if (support.empty()) throw std::invalid_argument("kernel_of_functional: zero functional");

    std::vector<std::vector<Int>> basis;
    for (int i = 0; i < n; ++i) {
        if (a[i] != 0) continue;
        std::vector<Int> e(n, Int(0));
        e[i] = 1;
        basis.push_back(std::move(e));
    }
    // gcd staircase over the support: w_j evaluates to the prefix gcd,
    // the difference vectors span the kernel on the support.
    std::vector<Int> w(n, Int(0));
    int i0 = support[0];
    w[i0] = a[i0] < 0 ? -1 : 1;
    Int g = abs_int(a[i0]);
    for (size_t j = 1; j < support.size(); ++j) {
        int ij = support[j];
        ExtGcd e = ext_gcd(g, a[ij]);
        std::vector<Int> u(n, Int(0));
        for (int t = 0; t < n; ++t) u[t] = (a[ij] / e.g) * w[t];
        u[ij] -= g / e.g;
        basis.push_back(std::move(u));
        for (int t = 0; t < n; ++t) w[t] *= e.x;
        w[ij] += e.y;
        g = e.g;
    }

    Mat result(n, static_cast<int>(basis.size()));
    for (int j = 0; j < result.cols; ++j)
        for (int i = 0; i < n; ++i) result.at(i, j) = basis[j][i];
    return result;
}

Inertia rational_inertia(const Mat& symmetric) {
    if (symmetric.rows != symmetric.cols)
        throw std::invalid_argument("rational_inertia: matrix not square");
    const int n = symmetric.rows;
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = Rat(symmetric.at(i, j));

    Inertia out;
    for (int k = 0; k < n; ++k) {
        if (m[k][k] == 0) {
            int pivot = -1;
            for (int i = k + 1; i < n; ++i)
                if (m[i][i] != 0) { pivot = i; break; }
            if (pivot >= 0) {
                std::swap(m[k], m[pivot]);
                for (int i = k; i < n; ++i) std::swap(m[i][k], m[i][pivot]);
            } else {
                // remaining diagonal is zero; a nonzero pairing partner
                // produces a diagonal entry via e_k += e_j, a fully
                // orthogonal e_k is a radical direction
                int j = -1;
                for (int c = k + 1; c < n && j < 0; ++c)
                    if (m[k][c] != 0) j = c;
                if (j < 0) { ++out.zero; continue; }
                for (int t = k; t < n; ++t) m[k][t] += m[j][t];
                for (int t = k; t < n; ++t) m[t][k] += m[t][j];
            }
        }
        if (m[k][k] == 0) { ++out.zero; continue; }
        if (m[k][k] > 0) ++out.pos; else ++out.neg;
        for (int i = k + 1; i < n; ++i) {
            if (m[i][k] == 0) continue;
            Rat f = m[i][k] / m[k][k];
            for (int j = k; j < n; ++j) m[i][j] -= f * m[k][j];
            for (int j = k; j < n; ++j) m[j][i] -= f * m[j][k];
        }
    }
    return out;
}

std::vector<Rat> solve_rational(const Mat& m, const std::vector<Rat>& rhs) {
    if (m.rows != m.cols || static_cast<int>(rhs.size()) != m.rows)
        throw std::invalid_argument("solve_rational: dimension mismatch");
    const int n = m.rows;
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n + 1));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = Rat(m.at(i, j));
        a[i][n] = rhs[i];
    }
    for (int k = 0; k < n; ++k) {
        int pivot = -1;
        for (int i = k; i < n; ++i)
            if (a[i][k] != 0) { pivot = i; break; }
        if (pivot < 0) throw std::invalid_argument("solve_rational: singular matrix");
        std::swap(a[k], a[pivot]);
        for (int i = 0; i < n; ++i) {
            if (i == k || a[i][k] == 0) continue;
            Rat f = a[i][k] / a[k][k];
            for (int j = k; j <= n; ++j) a[i][j] -= f * a[k][j];
        }
    }
    std::vector<Rat> x(n);
    for (int i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
    return x;
}

}  // namespace latsurf
