#pragma once

#include "latsurf/lattice.hpp"

#include <optional>
#include <string>
#include <utility>

namespace latsurf {

/// Target data for a certificate: class gamma, square h, genus g.
/// The derived pairing target is t = 2 - 2g + Q(gamma,gamma).
struct ChernConstraint {
    LatticeVector gamma;
    Int h;
    Int g;  // any integer; genus nonnegativity is the manifold layer's concern

    Int target_pairing(const GramLattice& L) const;
};

/// A characteristic vector whose square and pairing have been re-verified
/// against the constraint. Instances cannot exist unverified: the factory
/// checks all three conditions and throws on any mismatch.
class CharCertificate {
public:
    static CharCertificate make(const GramLattice& L, LatticeVector c,
                                const ChernConstraint& cons, std::string branch);

    const LatticeVector& c() const { return c_; }
    const Int& square() const { return square_; }
    const Int& pairing_with_gamma() const { return pairing_; }
    const std::string& branch() const { return branch_; }

private:
    CharCertificate(LatticeVector c, Int square, Int pairing, std::string branch)
        : c_(std::move(c)), square_(std::move(square)), pairing_(std::move(pairing)),
          branch_(std::move(branch)) {}

    LatticeVector c_;
    Int square_;
    Int pairing_;
    std::string branch_;
};

enum class SolveStatus { Found, ProvenImpossible, BudgetExhausted };

struct SolveOptions {
    long initial_bound = 8;   // starting box bound for the fallback search
    long max_bound = 64;      // escalation doubles the bound up to this cap
    long long eval_cap = 2'000'000;
};

struct ChernResult {
    SolveStatus status;
    std::optional<CharCertificate> certificate;
    std::string detail;
    long bound_used = 0;
};

/// Construct c with (1) c characteristic, (2) Q(c,c) = h,
/// (3) Q(c,gamma) = 2 - 2g + Q(gamma,gamma). Requires h = tau(Q) mod 8.
///
/// When the block_spec carries two H blocks the construction is closed
/// form and succeeds exactly when g = k(gamma) mod d (g = 1 for gamma = 0).
/// Otherwise the pairing constraint is solved by extended gcd and the
/// square is adjusted over the orthogonal complement of gamma: complete
/// enumeration when that complement is definite, closed-form reservoir
/// moves when it contains a hyperbolic or <1>+<-1> pair, an escalating
/// box search as the last resort.
ChernResult solve_chern(const GramLattice& L, const ChernConstraint& cons,
                        const SolveOptions& opts = {});

/// gamma = d * p with d = divisibility(gamma), p primitive.
std::pair<Int, LatticeVector> primitive_part(const LatticeVector& gamma);

/// x with Q(x,p) = 1 for a divisibility-one p, by extended gcd on gram*p.
LatticeVector find_dual_partner(const GramLattice& L, const LatticeVector& p);

/// U^T G U = G and |det U| = 1.
bool verify_isometry(const GramLattice& L, const Mat& U);

}  // namespace latsurf
