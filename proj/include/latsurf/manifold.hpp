#pragma once

#include "latsurf/chern.hpp"
#include "latsurf/lattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace latsurf {

/// Closed oriented connected 4-manifold: b1 plus the intersection form on
/// free H^2. With b0 = b4 = 1 and b3 = b1 this pins chi = 2 - 2*b1 + b2.
struct FourManifold {
    Int b1;
    GramLattice lattice;
    std::string name;

    FourManifold(Int b1_, GramLattice lattice_, std::string name_ = "");

    Int b2() const { return lattice.rank(); }
    Int euler_characteristic() const { return 2 - 2 * b1 + b2(); }
};

struct SurfaceClass {
    LatticeVector gamma;
    Int genus;

    SurfaceClass(LatticeVector gamma_, Int genus_);
};

enum class Verdict { Realizable, NotRealizable, Unknown };

enum class Rule {
    Theorem1,
    Rank2Complete,
    DefiniteBound,
    ParityFail,
    BminusOneBound,
    BudgetExhausted,
};

std::string verdict_name(Verdict v);
std::string rule_name(Rule r);

/// Answer to the pseudoholomorphicity question. Realizable always carries
/// a verified certificate; NotRealizable always names a finite proof.
struct Decision {
    Verdict verdict;
    Rule rule;
    std::optional<CharCertificate> certificate;
    long bound_used = 0;  // search bound behind an Unknown
    std::string note;
};

/// 2*chi + 3*tau, the square any almost complex structure's Chern class attains.
Int chern_number_target(const FourManifold& M);

/// b1 + b2+ odd, the existence parity for almost complex structures.
bool acs_parity_ok(const FourManifold& M);

/// A characteristic vector of square 2*chi+3*tau, when the manifold admits
/// an almost complex structure at all.
std::optional<CharCertificate> admits_acs(const FourManifold& M,
                                          const SolveOptions& opts = {});

Decision decide_pseudoholomorphic(const FourManifold& M, const SurfaceClass& S,
                                  long budget = 8);

/// decide_pseudoholomorphic for every genus 0..g_max; index = genus.
std::vector<Decision> genus_spectrum(const FourManifold& M, const LatticeVector& gamma,
                                     long g_max, long budget = 8);

/// Smallest g' >= genus + m with g' = k(gamma) mod d.
Int corollary_witness(const FourManifold& M, const SurfaceClass& S, const Int& m);

struct GenusInterval {
    Int lo, hi;
    bool empty = false;

    bool contains(const Int& g) const { return !empty && lo <= g && g <= hi; }
};

/// Exact genus window (2 - 2g + Q(gamma,gamma))^2 <= |Q(gamma,gamma)| * |h|
/// on a definite form; empty when h has the wrong sign.
GenusInterval definite_genus_bound(const FourManifold& M, const LatticeVector& gamma);

struct StabilizationResult {
    Int k;
    FourManifold stabilized;
};

/// Minimal number of S1 x S3 summands after which the rank-one-side bound
/// rejects the class while the ACS parity still holds.
StabilizationResult stabilization_count(const FourManifold& M0, const SurfaceClass& S);

}  // namespace latsurf
