#pragma once

#include "latsurf/matrix.hpp"
#include "latsurf/numeric.hpp"

#include <optional>
#include <string>
#include <vector>

namespace latsurf {

/// Standard unimodular building blocks. H is the hyperbolic plane,
/// E8 the even positive definite rank-8 lattice.
enum class Block { Plus1, Minus1, H, E8, MinusE8 };

int block_rank(Block b);
Mat block_gram(Block b);
std::string block_name(Block b);

/// Element of a lattice in coordinates.
struct LatticeVector {
    std::vector<Int> coords;

    LatticeVector() = default;
    explicit LatticeVector(std::vector<Int> c) : coords(std::move(c)) {}

    int size() const { return static_cast<int>(coords.size()); }
    bool is_zero() const;

    bool operator==(const LatticeVector& other) const = default;
    // lexicographic coordinate order
    bool operator<(const LatticeVector& other) const;

    std::string to_string() const;
};

LatticeVector lv(std::initializer_list<long long> coords);

/// Unimodular symmetric bilinear form given by its Gram matrix.
/// Construction validates symmetry and |det| = 1 exactly.
class GramLattice {
public:
    static GramLattice from_gram(Mat gram);
    static GramLattice from_blocks(const std::vector<Block>& blocks);

    int rank() const { return gram_.rows; }
    const Mat& gram() const { return gram_; }
    const std::optional<std::vector<Block>>& block_spec() const { return blocks_; }

    bool operator==(const GramLattice& other) const {
        return gram_ == other.gram_;
    }

private:
    GramLattice(Mat gram, std::optional<std::vector<Block>> blocks);

    Mat gram_;
    std::optional<std::vector<Block>> blocks_;
};

struct Signature {
    int b_plus = 0;
    int b_minus = 0;
    int tau() const { return b_plus - b_minus; }
    bool operator==(const Signature&) const = default;
};

enum class FormParity { Even, Odd };

/// Value in Z_d. Modulus 0 means an exact integer.
struct ResidueClass {
    Int modulus;
    Int value;

    ResidueClass(Int mod, Int val);

    /// whether the integer g lies in this residue class
    bool matches(const Int& g) const;

    bool operator==(const ResidueClass&) const = default;
    std::string to_string() const;
};

Int pairing(const GramLattice& L, const LatticeVector& x, const LatticeVector& y);

Signature signature(const GramLattice& L);

FormParity parity(const GramLattice& L);

/// gcd of the coordinates; zero exactly for the zero vector.
Int divisibility(const LatticeVector& gamma);

bool is_characteristic(const GramLattice& L, const LatticeVector& c);

/// Some characteristic vector, the 0/1 lift of the unique mod-2 solution
/// of gram*c = diag(gram).
LatticeVector find_characteristic(const GramLattice& L);

/// k(gamma) = 1 + (Q(gamma,gamma) - Q(c,gamma))/2 mod d(gamma),
/// independent of the characteristic c used. k(0) = 1 as an exact integer.
ResidueClass k_invariant(const GramLattice& L, const LatticeVector& gamma);

/// 1 + (Q(gamma,gamma) - Q(c,gamma))/2 for characteristic c. May be negative.
Int adjunction_genus(const GramLattice& L, const LatticeVector& c,
                     const LatticeVector& gamma);

}  // namespace latsurf
