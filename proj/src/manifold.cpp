#include "latsurf/manifold.hpp"

#include "latsurf/enumerate.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace latsurf {

FourManifold::FourManifold(Int b1_, GramLattice lattice_, std::string name_)
    : b1(std::move(b1_)), lattice(std::move(lattice_)), name(std::move(name_)) {
    if (b1 < 0) throw std::invalid_argument("FourManifold: b1 must be nonnegative");
}

SurfaceClass::SurfaceClass(LatticeVector gamma_, Int genus_)
    : gamma(std::move(gamma_)), genus(std::move(genus_)) {
    if (genus < 0) throw std::invalid_argument("SurfaceClass: genus must be nonnegative");
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Realizable: return "Realizable";
        case Verdict::NotRealizable: return "NotRealizable";
        case Verdict::Unknown: return "Unknown";
    }
    return "?";
}

std::string rule_name(Rule r) {
    switch (r) {
        case Rule::Theorem1: return "Theorem1";
        case Rule::Rank2Complete: return "Rank2Complete";
        case Rule::DefiniteBound: return "DefiniteBound";
        case Rule::ParityFail: return "ParityFail";
        case Rule::BminusOneBound: return "BminusOneBound";
        case Rule::BudgetExhausted: return "BudgetExhausted";
    }
    return "?";
}

Int chern_number_target(const FourManifold& M) {
    Int chi = M.euler_characteristic();
    Int tau = signature(M.lattice).tau();
    return 2 * chi + 3 * tau;
}

bool acs_parity_ok(const FourManifold& M) {
    Signature sig = signature(M.lattice);
    return mod_floor(M.b1 + sig.b_plus, 2) == 1;
}

std::optional<CharCertificate> admits_acs(const FourManifold& M,
                                          const SolveOptions& opts) {
    if (!acs_parity_ok(M)) return std::nullopt;
    Int h = chern_number_target(M);
    if (mod_floor(h - signature(M.lattice).tau(), 8) != 0) return std::nullopt;
    ChernConstraint cons{LatticeVector(std::vector<Int>(M.lattice.rank(), Int(0))), h,
                         Int(1)};
    ChernResult res = solve_chern(M.lattice, cons, opts);
    if (res.status == SolveStatus::Found) return res.certificate;
    return std::nullopt;
}

namespace {

SolveOptions budget_options(long budget) {
    SolveOptions opts;
    opts.initial_bound = std::max(1L, budget);
    opts.max_bound = std::max(64L, opts.initial_bound);
    return opts;
}

Decision make_decision(Verdict v, Rule r, std::string note = "") {
    Decision d;
    d.verdict = v;
    d.rule = r;
    d.note = std::move(note);
    return d;
}

// ------------------------------------------------------------------
// complete decision on an indefinite rank-2 form via an explicit
// isometry onto H or <1>+<-1> and exact factorization
// ------------------------------------------------------------------

struct Rank2Model {
    // columns of U are the model basis expressed in lattice coordinates
    std::vector<Int> u0, u1;
    bool even;
};

std::vector<Int> reduce_primitive(std::vector<Int> v) {
    Int g = 0;
    for (const Int& x : v) g = gcd_int(g, x);
    if (g > 1)
        for (Int& x : v) x /= g;
    return v;
}

// isotropic vector of an indefinite unimodular rank-2 form; the
// discriminant is a perfect square, so the root is rational
std::vector<Int> rank2_isotropic(const GramLattice& L) {
    const Int a = L.gram().at(0, 0), b = L.gram().at(0, 1), c = L.gram().at(1, 1);
    if (a == 0) return {Int(1), Int(0)};
    if (c == 0) return {Int(0), Int(1)};
    // a x^2 + 2 b x y + c y^2 = 0 with b^2 - a c = 1
    return reduce_primitive({-b + 1, a});
}

Rank2Model rank2_model(const GramLattice& L) {
    Rank2Model model;
    model.even = parity(L) == FormParity::Even;
    std::vector<Int> u = rank2_isotropic(L);
    LatticeVector x0 = find_dual_partner(L, LatticeVector(u));
    Int n = pairing(L, x0, x0);
    if (model.even) {
        // v = x0 - (n/2) u completes a hyperbolic pair
        Int half = n / 2;
        std::vector<Int> v = x0.coords;
        for (size_t i = 0; i < v.size(); ++i) v[i] -= half * u[i];
        model.u0 = u;
        model.u1 = v;
    } else {
        // norms of the dual partner are odd here; shear to squares +1 / -1
        Int k = (1 - n) / 2;
        std::vector<Int> w1 = x0.coords;
        for (size_t i = 0; i < w1.size(); ++i) w1[i] += k * u[i];
        std::vector<Int> w2 = x0.coords;
        Int kn = -(k + n);
        for (size_t i = 0; i < w2.size(); ++i) w2[i] += kn * u[i];
        model.u0 = w1;
        model.u1 = w2;
    }
    return model;
}

std::vector<Int> divisors_with_sign(const Int& n) {
    Int m = abs_int(n);
    std::vector<Int> out;
    for (Int i = 1; i * i <= m; ++i) {
        if (m % i != 0) continue;
        out.push_back(i);
        out.push_back(-i);
        if (i * i != m) {
            out.push_back(m / i);
            out.push_back(-(m / i));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// all model-coordinate solutions (y0, y1) of the square + pairing system
std::optional<std::vector<Int>> rank2_solve(const GramLattice& L, const Int& h,
                                            const Int& t, const LatticeVector& gamma) {
    Rank2Model model = rank2_model(L);
    LatticeVector m0{model.u0}, m1{model.u1};
    const Int g0 = pairing(L, m0, gamma), g1 = pairing(L, m1, gamma);

    std::vector<std::pair<Int, Int>> candidates;
    if (model.even) {
        // c = 2a*u0 + 2b*u1, square 8ab
        if (h != 0) {
            if (mod_floor(h, 8) == 0)
                for (const Int& alpha : divisors_with_sign(h / 8))
                    candidates.emplace_back(2 * alpha, 2 * ((h / 8) / alpha));
        } else {
            if (g0 != 0 && mod_floor(t, 2 * g0) == 0) candidates.emplace_back(t / g0, 0);
            if (g1 != 0 && mod_floor(t, 2 * g1) == 0) candidates.emplace_back(0, t / g1);
            candidates.emplace_back(0, 0);
        }
    } else {
        // c = y0*u0 + y1*u1 with both odd, square y0^2 - y1^2
        if (h != 0) {
            if (mod_floor(h, 4) == 0)
                for (const Int& alpha : divisors_with_sign(h / 4)) {
                    Int beta = (h / 4) / alpha;
                    if (mod_floor(alpha + beta, 2) == 1)
                        candidates.emplace_back(alpha + beta, beta - alpha);
                }
        } else {
            for (int sign = -1; sign <= 1; sign += 2) {
                Int coef = g0 + sign * g1;
                if (coef == 0) {
                    if (t == 0) candidates.emplace_back(1, sign);
                } else if (t % coef == 0 && mod_floor(t / coef, 2) == 1) {
                    candidates.emplace_back(t / coef, sign * (t / coef));
                }
            }
        }
    }

    std::vector<std::vector<Int>> hits;
    for (const auto& [y0, y1] : candidates) {
        if (y0 * g0 + y1 * g1 != t) continue;
        std::vector<Int> c(2);
        for (int i = 0; i < 2; ++i) c[i] = y0 * model.u0[i] + y1 * model.u1[i];
        hits.push_back(std::move(c));
    }
    if (hits.empty()) return std::nullopt;
    return *std::min_element(hits.begin(), hits.end());
}

}  // namespace

Decision decide_pseudoholomorphic(const FourManifold& M, const SurfaceClass& S,
                                  long budget) {
    const GramLattice& L = M.lattice;
    if (S.gamma.size() != L.rank())
        throw std::invalid_argument("decide: class length does not match b2");

    if (!acs_parity_ok(M))
        return make_decision(Verdict::NotRealizable, Rule::ParityFail,
                             "b1 + b2+ is even: no almost complex structure exists");

    const Int h = chern_number_target(M);
    const Int t = 2 - 2 * S.genus + pairing(L, S.gamma, S.gamma);
    const Signature sig = signature(L);
    const ResidueClass k = k_invariant(L, S.gamma);
    const bool congruent = k.matches(S.genus);
    const Int d = divisibility(S.gamma);
    std::string note =
        d == 0 ? "zero class: the genus congruence degenerates to g = 1" : "";

    ChernConstraint cons{S.gamma, h, S.genus};

    if (std::min(sig.b_plus, sig.b_minus) >= 2) {
        if (!congruent)
            return make_decision(Verdict::NotRealizable, Rule::Theorem1,
                                 note.empty() ? "genus is not k(gamma) mod d" : note);
        ChernResult res = solve_chern(L, cons, budget_options(budget));
        if (res.status == SolveStatus::Found) {
            Decision dec = make_decision(Verdict::Realizable, Rule::Theorem1, note);
            dec.certificate = res.certificate;
            return dec;
        }
        if (res.status == SolveStatus::ProvenImpossible)
            throw std::logic_error(
                "decide: certificate construction contradicts the genus congruence");
        Decision dec = make_decision(Verdict::Unknown, Rule::BudgetExhausted,
                                     "the congruence holds but no certificate was "
                                     "constructed within the budget");
        dec.bound_used = res.bound_used;
        return dec;
    }

    if (sig.b_plus == 0 || sig.b_minus == 0) {
        auto all = characteristic_with_square_definite(L, h);
        for (const auto& c : all) {
            if (pairing(L, c, S.gamma) != t) continue;
            Decision dec = make_decision(Verdict::Realizable, Rule::DefiniteBound, note);
            dec.certificate = CharCertificate::make(L, c, cons, "definite-complete");
            return dec;
        }
        return make_decision(Verdict::NotRealizable, Rule::DefiniteBound,
                             "complete enumeration over the definite form finds no "
                             "matching characteristic vector");
    }

    if (L.rank() <= 2) {
        if (auto c = rank2_solve(L, h, t, S.gamma)) {
            Decision dec = make_decision(Verdict::Realizable, Rule::Rank2Complete, note);
            dec.certificate = CharCertificate::make(L, LatticeVector(*c), cons,
                                                    "rank2-complete");
            return dec;
        }
        return make_decision(Verdict::NotRealizable, Rule::Rank2Complete,
                             "exact factorization of the rank-2 constraints has no "
                             "solution");
    }

    // min{b+, b-} = 1, rank >= 3
    if (!congruent)
        return make_decision(Verdict::NotRealizable, Rule::Theorem1,
                             note.empty() ? "genus is not k(gamma) mod d" : note);

    const Int s2 = pairing(L, S.gamma, S.gamma);
    const bool one_sided = (sig.b_minus == 1 && s2 < 0) || (sig.b_plus == 1 && s2 > 0);
    if (one_sided && h * s2 > t * t)
        return make_decision(Verdict::NotRealizable, Rule::BminusOneBound,
                             "the rank-one-side bound rejects the class: "
                             "h is beyond t^2 / Q(gamma,gamma)");

    ChernResult res = solve_chern(L, cons, budget_options(budget));
    if (res.status == SolveStatus::Found) {
        Rule rule = res.certificate->branch() == "direct-definite-complete"
                        ? Rule::DefiniteBound
                        : Rule::Theorem1;
        Decision dec = make_decision(Verdict::Realizable, rule, note);
        dec.certificate = res.certificate;
        return dec;
    }
    if (res.status == SolveStatus::ProvenImpossible)
        return make_decision(Verdict::NotRealizable, Rule::DefiniteBound, res.detail);
    Decision dec = make_decision(Verdict::Unknown, Rule::BudgetExhausted, res.detail);
    dec.bound_used = res.bound_used;
    return dec;
}

std::vector<Decision> genus_spectrum(const FourManifold& M, const LatticeVector& gamma,
                                     long g_max, long budget) {
    if (g_max < 0) throw std::invalid_argument("genus_spectrum: g_max must be >= 0");
    if (gamma.size() != M.lattice.rank())
        throw std::invalid_argument("genus_spectrum: class length does not match b2");
    std::vector<Decision> out(static_cast<size_t>(g_max) + 1,
                              make_decision(Verdict::Unknown, Rule::BudgetExhausted));
    std::exception_ptr failure;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long g = 0; g <= g_max; ++g) {
        try {
            out[static_cast<size_t>(g)] =
                decide_pseudoholomorphic(M, SurfaceClass(gamma, Int(g)), budget);
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
            failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

Int corollary_witness(const FourManifold& M, const SurfaceClass& S, const Int& m) {
    if (m < 0) throw std::invalid_argument("corollary_witness: m must be nonnegative");
    Signature sig = signature(M.lattice);
    if (std::min(sig.b_plus, sig.b_minus) < 2)
        throw std::domain_error("corollary_witness: requires min{b+, b-} >= 2");
    if (!acs_parity_ok(M))
        throw std::domain_error("corollary_witness: requires b1 + b2+ odd");
    Int d = divisibility(S.gamma);
    if (d < 1)
        throw std::domain_error("corollary_witness: the class must not be torsion");
    ResidueClass k = k_invariant(M.lattice, S.gamma);
    Int start = S.genus + m;
    return start + mod_floor(k.value - start, d);
}

GenusInterval definite_genus_bound(const FourManifold& M, const LatticeVector& gamma) {
    Signature sig = signature(M.lattice);
    if (sig.b_plus != 0 && sig.b_minus != 0)
        throw std::domain_error("definite_genus_bound: lattice must be definite");
    Int s2 = pairing(M.lattice, gamma, gamma);
    if (s2 == 0)
        throw std::domain_error("definite_genus_bound: class must have nonzero square");
    Int h = chern_number_target(M);
    Int rhs = s2 * h;  // same sign on both definite sides
    GenusInterval interval{0, 0, true};
    if (rhs < 0) return interval;
    Int r = isqrt_floor(rhs);
    // |2 - 2g + s2| <= floor(sqrt(s2 * h)), exactly
    Int lo = div_ceil(2 + s2 - r, 2);
    Int hi = div_floor(2 + s2 + r, 2);
    if (lo < 0) lo = 0;
    if (lo > hi) return interval;
    return GenusInterval{lo, hi, false};
}

StabilizationResult stabilization_count(const FourManifold& M0, const SurfaceClass& S) {
    Signature sig = signature(M0.lattice);
    if (sig.b_minus != 1 || sig.b_plus < 2)
        throw std::domain_error("stabilization_count: requires b- = 1 and b+ >= 2");
    Int s2 = pairing(M0.lattice, S.gamma, S.gamma);
    if (s2 >= 0)
        throw std::domain_error("stabilization_count: class must have negative square");
    if (divisibility(S.gamma) != 1)
        throw std::domain_error("stabilization_count: class must have divisibility one");

    const Int h0 = chern_number_target(M0);
    const Int t = 2 - 2 * S.genus + s2;
    // condition (i): h0 - 4k < t^2 / s2, an exact rational comparison;
    // with s2 < 0 this is (h0 - 4k) * s2 > t^2
    Rat threshold = (Rat(h0) - Rat(t * t, s2)) / 4;
    Int k = div_floor(boost::multiprecision::numerator(threshold),
                      boost::multiprecision::denominator(threshold)) +
            1;
    if (k < 0) k = 0;
    // condition (ii): b1 + k + b+ odd
    if (mod_floor(M0.b1 + k + sig.b_plus, 2) != 1) k += 1;

    std::ostringstream name;
    name << (M0.name.empty() ? "M" : M0.name) << " # " << k << "(S1xS3)";
    FourManifold stabilized(M0.b1 + k, M0.lattice, name.str());
    return StabilizationResult{k, std::move(stabilized)};
}

}  // namespace latsurf
