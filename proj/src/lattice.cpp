#include "latsurf/lattice.hpp"

#include <sstream>
#include <stdexcept>

namespace latsurf {

int block_rank(Block b) {
    switch (b) {
        case Block::Plus1:
        case Block::Minus1: return 1;
        case Block::H: return 2;
        case Block::E8:
        case Block::MinusE8: return 8;
    }
    throw std::logic_error("block_rank: unknown block");
}

Mat block_gram(Block b) {
    switch (b) {
        case Block::Plus1: {
            Mat m(1, 1);
            m.at(0, 0) = 1;
            return m;
        }
        case Block::Minus1: {
            Mat m(1, 1);
            m.at(0, 0) = -1;
            return m;
        }
        case Block::H: {
            Mat m(2, 2);
            m.at(0, 1) = 1;
            m.at(1, 0) = 1;
            return m;
        }
        case Block::E8:
        case Block::MinusE8: {
            // Cartan matrix of E8: chain 1..7, branch node 8 on node 5
            Mat m(8, 8);
            for (int i = 0; i < 8; ++i) m.at(i, i) = 2;
            for (int i = 0; i < 6; ++i) { m.at(i, i + 1) = -1; m.at(i + 1, i) = -1; }
            m.at(4, 7) = -1;
            m.at(7, 4) = -1;
            if (b == Block::MinusE8)
                for (auto& v : m.a) v = -v;
            return m;
        }
    }
    throw std::logic_error("block_gram: unknown block");
}

std::string block_name(Block b) {
    switch (b) {
        case Block::Plus1: return "<1>";
        case Block::Minus1: return "<-1>";
        case Block::H: return "H";
        case Block::E8: return "E8";
        case Block::MinusE8: return "(-E8)";
    }
    return "?";
}

bool LatticeVector::is_zero() const {
    for (const Int& c : coords)
        if (c != 0) return false;
    return true;
}

bool LatticeVector::operator<(const LatticeVector& other) const {
    return coords < other.coords;
}

std::string LatticeVector::to_string() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < coords.size(); ++i) {
        if (i) os << ",";
        os << coords[i];
    }
    os << ")";
    return os.str();
}

LatticeVector lv(std::initializer_list<long long> coords) {
    std::vector<Int> c;
    c.reserve(coords.size());
    for (long long x : coords) c.emplace_back(x);
    return LatticeVector(std::move(c));
}

GramLattice::GramLattice(Mat gram, std::optional<std::vector<Block>> blocks)
    : gram_(std::move(gram)), blocks_(std::move(blocks)) {}

GramLattice GramLattice::from_gram(Mat gram) {
    if (gram.rows != gram.cols)
        throw std::invalid_argument("GramLattice: gram matrix must be square");
    for (int i = 0; i < gram.rows; ++i)
        for (int j = i + 1; j < gram.cols; ++j)
            if (gram.at(i, j) != gram.at(j, i))
                throw std::invalid_argument("GramLattice: gram matrix must be symmetric");
    Int d = det_bareiss(gram);
    if (d != 1 && d != -1)
        throw std::invalid_argument("GramLattice: form must be unimodular (|det| = 1)");
    return GramLattice(std::move(gram), std::nullopt);
}

GramLattice GramLattice::from_blocks(const std::vector<Block>& blocks) {
    int n = 0;
    for (Block b : blocks) n += block_rank(b);
    Mat gram(n, n);
    int off = 0;
    for (Block b : blocks) {
        Mat g = block_gram(b);
        for (int i = 0; i < g.rows; ++i)
            for (int j = 0; j < g.cols; ++j) gram.at(off + i, off + j) = g.at(i, j);
        off += g.rows;
    }
    GramLattice L = from_gram(std::move(gram));
    L.blocks_ = blocks;
    return L;
}

ResidueClass::ResidueClass(Int mod, Int val) : modulus(std::move(mod)), value(std::move(val)) {
    if (modulus < 0) throw std::invalid_argument("ResidueClass: negative modulus");
    if (modulus > 0) value = mod_floor(value, modulus);
}

bool ResidueClass::matches(const Int& g) const {
    if (modulus == 0) return g == value;
    return mod_floor(g, modulus) == value;
}

std::string ResidueClass::to_string() const {
    std::ostringstream os;
    os << value;
    if (modulus > 0) os << " (mod " << modulus << ")";
    return os.str();
}

static void check_dim(const GramLattice& L, const LatticeVector& v, const char* op) {
    if (v.size() != L.rank()) {
        std::ostringstream os;
        os << op << ": vector length " << v.size() << " does not match lattice rank "
           << L.rank();
        throw std::invalid_argument(os.str());
    }
}

Int pairing(const GramLattice& L, const LatticeVector& x, const LatticeVector& y) {
    check_dim(L, x, "pairing");
    check_dim(L, y, "pairing");
    Int acc = 0;
    const Mat& g = L.gram();
    for (int i = 0; i < g.rows; ++i) {
        if (x.coords[i] == 0) continue;
        Int row = 0;
        for (int j = 0; j < g.cols; ++j)
            if (g.at(i, j) != 0) row += g.at(i, j) * y.coords[j];
        acc += x.coords[i] * row;
    }
    return acc;
}

Signature signature(const GramLattice& L) {
    Inertia in = rational_inertia(L.gram());
    if (in.zero != 0)
        throw std::logic_error("signature: degenerate form (unimodularity invariant violated)");
    return Signature{in.pos, in.neg};
}

FormParity parity(const GramLattice& L) {
    for (int i = 0; i < L.rank(); ++i)
        if (mod_floor(L.gram().at(i, i), 2) != 0) return FormParity::Odd;
    return FormParity::Even;
}

Int divisibility(const LatticeVector& gamma) {
    Int g = 0;
    for (const Int& c : gamma.coords) g = gcd_int(g, c);
    return g;
}

bool is_characteristic(const GramLattice& L, const LatticeVector& c) {
    check_dim(L, c, "is_characteristic");
    std::vector<Int> gc = mat_vec(L.gram(), c.coords);
    for (int i = 0; i < L.rank(); ++i)
        if (mod_floor(gc[i] - L.gram().at(i, i), 2) != 0) return false;
    return true;
}

LatticeVector find_characteristic(const GramLattice& L) {
    const int n = L.rank();
    // solve gram * c = diag(gram) over GF(2); unimodularity makes the
    // system uniquely solvable
    std::vector<std::vector<int>> m(n, std::vector<int>(n + 1, 0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            m[i][j] = static_cast<int>(mod_floor(L.gram().at(i, j), 2));
        m[i][n] = static_cast<int>(mod_floor(L.gram().at(i, i), 2));
    }
    for (int k = 0; k < n; ++k) {
        int pivot = -1;
        for (int i = k; i < n; ++i)
            if (m[i][k]) { pivot = i; break; }
        if (pivot < 0)
            throw std::logic_error("find_characteristic: singular mod-2 system");
        std::swap(m[k], m[pivot]);
        for (int i = 0; i < n; ++i) {
            if (i == k || !m[i][k]) continue;
            for (int j = k; j <= n; ++j) m[i][j] ^= m[k][j];
        }
    }
    std::vector<Int> c(n);
    for (int i = 0; i < n; ++i) c[i] = m[i][n];
    return LatticeVector(std::move(c));
}

ResidueClass k_invariant(const GramLattice& L, const LatticeVector& gamma) {
    check_dim(L, gamma, "k_invariant");
    if (gamma.is_zero()) return ResidueClass(0, 1);
    Int d = divisibility(gamma);
    LatticeVector c = find_characteristic(L);
    Int diff = pairing(L, gamma, gamma) - pairing(L, c, gamma);
    // characteristic c makes the difference even
    return ResidueClass(d, 1 + diff / 2);
}

Int adjunction_genus(const GramLattice& L, const LatticeVector& c,
                     const LatticeVector& gamma) {
    check_dim(L, c, "adjunction_genus");
    check_dim(L, gamma, "adjunction_genus");
    if (!is_characteristic(L, c))
        throw std::domain_error("adjunction_genus: c is not characteristic");
    Int diff = pairing(L, gamma, gamma) - pairing(L, c, gamma);
    return 1 + diff / 2;
}

}  // namespace latsurf
