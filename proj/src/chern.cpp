#include "latsurf/chern.hpp"

#include "latsurf/enumerate.hpp"
#include "latsurf/matrix.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace latsurf {

Int ChernConstraint::target_pairing(const GramLattice& L) const {
    return 2 - 2 * g + pairing(L, gamma, gamma);
}

CharCertificate CharCertificate::make(const GramLattice& L, LatticeVector c,
                                      const ChernConstraint& cons,
                                      std::string branch) {
    if (!is_characteristic(L, c))
        throw std::logic_error("CharCertificate: vector is not characteristic");
    Int square = pairing(L, c, c);
    if (square != cons.h)
        throw std::logic_error("CharCertificate: square does not match target");
    Int pair_g = pairing(L, c, cons.gamma);
    if (pair_g != cons.target_pairing(L))
        throw std::logic_error("CharCertificate: pairing does not match target");
    return CharCertificate(std::move(c), std::move(square), std::move(pair_g),
                           std::move(branch));
}

std::pair<Int, LatticeVector> primitive_part(const LatticeVector& gamma) {
    if (gamma.is_zero())
        throw std::domain_error("primitive_part: zero class has no primitive part");
    Int d = divisibility(gamma);
    std::vector<Int> p(gamma.coords.size());
    for (size_t i = 0; i < p.size(); ++i) p[i] = gamma.coords[i] / d;
    return {d, LatticeVector(std::move(p))};
}

LatticeVector find_dual_partner(const GramLattice& L, const LatticeVector& p) {
    if (p.size() != L.rank())
        throw std::invalid_argument("find_dual_partner: dimension mismatch");
    if (divisibility(p) != 1)
        throw std::domain_error("find_dual_partner: vector must have divisibility one");
    std::vector<Int> f = mat_vec(L.gram(), p.coords);
    BezoutChain bez = bezout_chain(f);
    if (bez.g != 1)
        throw std::logic_error("find_dual_partner: unimodularity invariant violated");
    return LatticeVector(std::move(bez.coeffs));
}

bool verify_isometry(const GramLattice& L, const Mat& U) {
    if (U.rows != L.rank() || U.cols != L.rank())
        throw std::invalid_argument("verify_isometry: dimension mismatch");
    Int d = det_bareiss(U);
    if (d != 1 && d != -1) return false;
    return mat_mul(mat_mul(mat_transpose(U), L.gram()), U) == L.gram();
}

namespace {

std::vector<Int> add_scaled(std::vector<Int> base, const std::vector<Int>& dir,
                            const Int& scale) {
    for (size_t i = 0; i < base.size(); ++i) base[i] += scale * dir[i];
    return base;
}

// ---------------------------------------------------------------------
// structured path: two explicit H blocks
// ---------------------------------------------------------------------

struct HBlockLayout {
    int e1, f1, e2, f2;
    std::vector<int> rest;
};

std::optional<HBlockLayout> two_h_layout(const GramLattice& L) {
    if (!L.block_spec()) return std::nullopt;
    HBlockLayout layout{-1, -1, -1, -1, {}};
    int off = 0;
    int h_seen = 0;
    for (Block b : *L.block_spec()) {
        int r = block_rank(b);
        if (b == Block::H && h_seen == 0) {
            layout.e1 = off;
            layout.f1 = off + 1;
            ++h_seen;
        } else if (b == Block::H && h_seen == 1) {
            layout.e2 = off;
            layout.f2 = off + 1;
            ++h_seen;
        } else {
            for (int i = 0; i < r; ++i) layout.rest.push_back(off + i);
        }
        off += r;
    }
    if (h_seen < 2) return std::nullopt;
    return layout;
}

// 2x2 Smith form: U * X * V = diag(d1, d2) with |det U| = |det V| = 1
struct Snf2 {
    Mat u, v;
    Int d1, d2;
};

Int det2(const Mat& m) { return m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0); }

Snf2 snf_2x2(Mat x) {
    Mat u = Mat::identity(2), v = Mat::identity(2);
    auto row_op = [&](Int q) {  // row1 -= q * row0
        for (int j = 0; j < 2; ++j) {
            x.at(1, j) -= q * x.at(0, j);
            u.at(1, j) -= q * u.at(0, j);
        }
    };
    auto row_swap = [&] {
        for (int j = 0; j < 2; ++j) {
            std::swap(x.at(0, j), x.at(1, j));
            std::swap(u.at(0, j), u.at(1, j));
        }
    };
    auto col_op = [&](Int q) {  // col1 -= q * col0
        for (int i = 0; i < 2; ++i) {
            x.at(i, 1) -= q * x.at(i, 0);
            v.at(i, 1) -= q * v.at(i, 0);
        }
    };
    auto col_swap = [&] {
        for (int i = 0; i < 2; ++i) {
            std::swap(x.at(i, 0), x.at(i, 1));
            std::swap(v.at(i, 0), v.at(i, 1));
        }
    };

    for (int guard = 0; guard < 256; ++guard) {
        while (x.at(1, 0) != 0) {
            if (x.at(0, 0) == 0) { row_swap(); continue; }
            row_op(x.at(1, 0) / x.at(0, 0));
            if (x.at(1, 0) != 0) row_swap();
        }
        while (x.at(0, 1) != 0) {
            if (x.at(0, 0) == 0) { col_swap(); continue; }
            col_op(x.at(0, 1) / x.at(0, 0));
            if (x.at(0, 1) != 0) col_swap();
        }
        if (x.at(1, 0) != 0 || x.at(0, 1) != 0) continue;
        if (x.at(0, 0) == 0 && x.at(1, 1) != 0) { row_swap(); col_swap(); continue; }
        if (x.at(0, 0) != 0 && x.at(1, 1) % x.at(0, 0) != 0) {
            // pull the second diagonal entry into column 0 and restart
            for (int i = 0; i < 2; ++i) {
                x.at(i, 0) += x.at(i, 1);
                v.at(i, 0) += v.at(i, 1);
            }
            continue;
        }
        return Snf2{u, v, x.at(0, 0), x.at(1, 1)};
    }
    throw std::logic_error("snf_2x2: did not converge");
}

// isometry of H+H from an SL2 x SL2 pair acting on 2x2 matrices:
// coordinates (x1,x2,x3,x4) <-> [[x1, x3], [-x4, x2]], Q = 2 det
Mat iso_from_pair(const Mat& a, const Mat& b) {
    Mat t(4, 4);
    for (int m = 0; m < 4; ++m) {
        Int x1 = m == 0, x2 = m == 1, x3 = m == 2, x4 = m == 3;
        Mat xm(2, 2);
        xm.at(0, 0) = x1; xm.at(0, 1) = x3;
        xm.at(1, 0) = -x4; xm.at(1, 1) = x2;
        Mat img = mat_mul(mat_mul(a, xm), mat_transpose(b));
        t.at(0, m) = img.at(0, 0);
        t.at(1, m) = img.at(1, 1);
        t.at(2, m) = img.at(0, 1);
        t.at(3, m) = -img.at(1, 0);
    }
    return t;
}

Mat inverse_2x2_unimodular(const Mat& m) {
    Int d = det2(m);
    if (d != 1 && d != -1) throw std::logic_error("inverse_2x2: not unimodular");
    Mat inv(2, 2);
    inv.at(0, 0) = m.at(1, 1) / d;
    inv.at(0, 1) = -m.at(0, 1) / d;
    inv.at(1, 0) = -m.at(1, 0) / d;
    inv.at(1, 1) = m.at(0, 0) / d;
    return inv;
}

// Embed a 4x4 map on the H+H coordinates into the full rank.
Mat embed_h_map(const Mat& t4, const HBlockLayout& lay, int n) {
    Mat t = Mat::identity(n);
    const int pos[4] = {lay.e1, lay.f1, lay.e2, lay.f2};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) t.at(pos[i], pos[j]) = t4.at(i, j);
    return t;
}

ChernResult found(const GramLattice& L, std::vector<Int> coords,
                  const ChernConstraint& cons, std::string branch) {
    ChernResult r;
    r.status = SolveStatus::Found;
    r.certificate =
        CharCertificate::make(L, LatticeVector(std::move(coords)), cons, branch);
    r.detail = std::move(branch);
    return r;
}

ChernResult impossible(std::string why) {
    ChernResult r;
    r.status = SolveStatus::ProvenImpossible;
    r.detail = std::move(why);
    return r;
}

std::string structured_branch(const GramLattice& L, const ChernConstraint& cons) {
    if (cons.gamma.is_zero()) return "gamma-zero";
    if (parity(L) == FormParity::Even) return "even-ordinary";
    LatticeVector p = primitive_part(cons.gamma).second;
    return is_characteristic(L, p) ? "odd-characteristic" : "odd-ordinary";
}

ChernResult solve_structured(const GramLattice& L, const ChernConstraint& cons,
                             const HBlockLayout& lay) {
    const int n = L.rank();
    const Int t = cons.target_pairing(L);
    const std::string branch = structured_branch(L, cons);

    // rest lattice R (may be empty)
    const int nr = static_cast<int>(lay.rest.size());
    Mat rg(nr, nr);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nr; ++j) rg.at(i, j) = L.gram().at(lay.rest[i], lay.rest[j]);
    GramLattice R = GramLattice::from_gram(rg);

    // normalize the H-part of gamma to (d1, d2, 0, 0) with an SL2 x SL2 map
    Mat xg(2, 2);
    xg.at(0, 0) = cons.gamma.coords[lay.e1];
    xg.at(1, 1) = cons.gamma.coords[lay.f1];
    xg.at(0, 1) = cons.gamma.coords[lay.e2];
    xg.at(1, 0) = -cons.gamma.coords[lay.f2];
    Snf2 snf = snf_2x2(xg);
    Mat a = snf.u, b = mat_transpose(snf.v);
    Int d1 = snf.d1;
    if (det2(a) * det2(b) == -1) {
        // negate the first row of U; the first elementary divisor flips sign
        a.at(0, 0) = -a.at(0, 0);
        a.at(0, 1) = -a.at(0, 1);
        d1 = -d1;
    }
    Mat fwd = embed_h_map(iso_from_pair(a, b), lay, n);
    Mat bwd = embed_h_map(
        iso_from_pair(inverse_2x2_unimodular(a), inverse_2x2_unimodular(b)), lay, n);
    if (!verify_isometry(L, fwd))
        throw std::logic_error("solve_chern: H-plane normalization is not an isometry");

    std::vector<Int> gamma_t = mat_vec(fwd, cons.gamma.coords);
    LatticeVector gamma_r(std::vector<Int>(nr));
    for (int i = 0; i < nr; ++i) gamma_r.coords[i] = gamma_t[lay.rest[i]];

    LatticeVector rho0 =
        nr > 0 ? find_characteristic(R) : LatticeVector(std::vector<Int>{});

    // pairing equation: a1*d2 + b1*d1 + Q_R(sigma, gamma_R) = T
    Int two_T = t - (nr > 0 ? pairing(R, rho0, gamma_r) : Int(0));
    if (mod_floor(two_T, 2) != 0)
        throw std::logic_error("solve_chern: pairing parity invariant violated");
    Int big_t = two_T / 2;

    std::vector<Int> coeffs{snf.d2, d1};
    std::vector<Int> rg_gamma =
        nr > 0 ? mat_vec(R.gram(), gamma_r.coords) : std::vector<Int>{};
    coeffs.insert(coeffs.end(), rg_gamma.begin(), rg_gamma.end());
    BezoutChain bez = bezout_chain(coeffs);

    if (bez.g == 0) {
        if (big_t != 0)
            return impossible("zero class: the pairing Q(c,0) = 0 cannot meet the target");
    } else if (big_t % bez.g != 0) {
        std::ostringstream os;
        os << "genus congruence fails: target pairing is " << big_t << " mod " << bez.g
           << " away from the reachable residue";
        return impossible(os.str());
    }

    Int scale = bez.g == 0 ? Int(0) : Int(big_t / bez.g);
    Int a1 = scale * bez.coeffs[0];
    Int b1 = scale * bez.coeffs[1];
    LatticeVector rho = rho0;
    for (int i = 0; i < nr; ++i) rho.coords[i] += 2 * scale * bez.coeffs[2 + i];

    Int rho_sq = nr > 0 ? pairing(R, rho, rho) : Int(0);
    Int diff = cons.h - rho_sq - 8 * a1 * b1;
    if (mod_floor(diff, 8) != 0)
        throw std::logic_error("solve_chern: characteristic square invariant violated");
    Int b2 = diff / 8;

    std::vector<Int> ct(n, Int(0));
    ct[lay.e1] = 2 * a1;
    ct[lay.f1] = 2 * b1;
    ct[lay.e2] = 2 * b2;
    ct[lay.f2] = 2;
    for (int i = 0; i < nr; ++i) ct[lay.rest[i]] = rho.coords[i];

    return found(L, mat_vec(bwd, ct), cons, branch);
}

// ---------------------------------------------------------------------
// direct path: extended gcd + square adjustment over gamma's complement
// ---------------------------------------------------------------------

struct ResidualProblem {
    // find z with z^T K z + lambda . z = 2b, c = c1 + 2 * basis * z
    Mat basis;                 // ambient columns spanning gamma's complement
    Mat k_gram;                // basis^T G basis
    std::vector<Int> lambda;   // basis^T G c1
    Int b;
    std::vector<Int> c1;
};

Int k_form(const ResidualProblem& rp, const std::vector<Int>& z) {
    Int q = 0;
    const int m = rp.k_gram.rows;
    for (int i = 0; i < m; ++i) {
        if (z[i] == 0) continue;
        Int row = 0;
        for (int j = 0; j < m; ++j)
            if (rp.k_gram.at(i, j) != 0) row += rp.k_gram.at(i, j) * z[j];
        q += z[i] * row;
    }
    return q;
}

Int k_lambda(const ResidualProblem& rp, const std::vector<Int>& z) {
    Int s = 0;
    for (size_t i = 0; i < z.size(); ++i) s += rp.lambda[i] * z[i];
    return s;
}

std::vector<Int> ambient_candidate(const ResidualProblem& rp,
                                   const std::vector<Int>& z) {
    std::vector<Int> c = rp.c1;
    for (int i = 0; i < rp.basis.rows; ++i) {
        Int acc = 0;
        for (int j = 0; j < rp.basis.cols; ++j)
            if (rp.basis.at(i, j) != 0) acc += rp.basis.at(i, j) * z[j];
        c[i] += 2 * acc;
    }
    return c;
}

// closed-form reservoir moves on a pair of complement vectors
struct ReservoirHit {
    std::vector<Int> z;
    const char* tag;
};

std::optional<ReservoirHit> reservoir_move(const ResidualProblem& rp,
                                           const std::vector<Int>& u,
                                           const std::vector<Int>& v) {
    Int quu = k_form(rp, u), qvv = k_form(rp, v);
    Int quv = 0;
    {
        const int m = rp.k_gram.rows;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                if (rp.k_gram.at(i, j) != 0 && u[i] != 0 && v[j] != 0)
                    quv += u[i] * rp.k_gram.at(i, j) * v[j];
    }
    Int lu = k_lambda(rp, u), lv = k_lambda(rp, v);

    if (quu == 0 && qvv == 0 && (quv == 1 || quv == -1)) {
        // hyperbolic pair: z = s*u + r*v with eps*s*r + s*mu_u + r*mu_v = b
        Int mu_u = lu / 2, mu_v = lv / 2;
        Int r = 1 - quv * mu_u;
        Int s = quv * rp.b + mu_u * mu_v - quv * mu_v;
        std::vector<Int> z(u.size());
        for (size_t i = 0; i < z.size(); ++i) z[i] = s * u[i] + r * v[i];
        return ReservoirHit{std::move(z), "direct-hyperbolic-adjust"};
    }
    if (quu == 1 && qvv == -1 && quv == 0) {
        // odd split pair: s^2 - r^2 + s*lu + r*lv = 2b via difference of squares
        Int bp = (8 * rp.b + lu * lu - lv * lv) / 8;
        Int s_odd = 2 * bp + 1, r_odd = 2 * bp - 1;
        Int s = (s_odd - lu) / 2;
        Int r = (r_odd + lv) / 2;
        std::vector<Int> z(u.size());
        for (size_t i = 0; i < z.size(); ++i) z[i] = s * u[i] + r * v[i];
        return ReservoirHit{std::move(z), "direct-split-adjust"};
    }
    return std::nullopt;
}

ChernResult solve_direct(const GramLattice& L, const ChernConstraint& cons,
                         const SolveOptions& opts) {
    const int n = L.rank();
    const Int t = cons.target_pairing(L);
    LatticeVector w = find_characteristic(L);

    ResidualProblem rp;
    if (cons.gamma.is_zero()) {
        if (t != 0)
            return impossible("zero class: the pairing Q(c,0) = 0 cannot meet the target");
        rp.c1 = w.coords;
        rp.basis = Mat::identity(n);
    } else {
        std::vector<Int> functional = mat_vec(L.gram(), cons.gamma.coords);
        Int d = divisibility(cons.gamma);
        Int tp = (t - pairing(L, w, cons.gamma)) / 2;
        if (mod_floor(tp, d) != 0) {
            std::ostringstream os;
            os << "genus congruence fails: every characteristic vector pairs to "
               << mod_floor(pairing(L, w, cons.gamma), 2 * d) << " mod " << 2 * d
               << " against gamma, the target is " << t;
            return impossible(os.str());
        }
        BezoutChain bez = bezout_chain(functional);
        rp.c1 = add_scaled(w.coords, bez.coeffs, 2 * (tp / d));
        rp.basis = kernel_of_functional(functional);
    }

    {
        LatticeVector c1v(rp.c1);
        Int diff = cons.h - pairing(L, c1v, c1v);
        if (mod_floor(diff, 8) != 0)
            throw std::logic_error("solve_chern: characteristic square invariant violated");
        rp.b = diff / 8;
        if (rp.b == 0) return found(L, rp.c1, cons, "direct-immediate");
    }

    const int m = rp.basis.cols;
    if (m == 0)
        return impossible(
            "the pairing constraint forces c completely and the forced vector "
            "has the wrong square");

    rp.k_gram = mat_mul(mat_mul(mat_transpose(rp.basis), L.gram()), rp.basis);
    rp.lambda = mat_vec(mat_transpose(rp.basis), mat_vec(L.gram(), rp.c1));

    // rank-one complement: a single quadratic equation, solved exactly
    if (m == 1) {
        Int alpha = rp.k_gram.at(0, 0), beta = rp.lambda[0];
        auto try_s = [&](const Int& s) -> std::optional<ChernResult> {
            if (alpha * s * s + beta * s == 2 * rp.b)
                return found(L, ambient_candidate(rp, {s}), cons, "direct-univariate");
            return std::nullopt;
        };
        if (alpha == 0) {
            if (beta == 0 || (2 * rp.b) % beta != 0)
                return impossible("residual constraint is linear and unsatisfiable");
            if (auto r = try_s(2 * rp.b / beta)) return *r;
            return impossible("residual constraint is linear and unsatisfiable");
        }
        Int disc = beta * beta + 8 * alpha * rp.b;
        if (disc < 0) return impossible("residual quadratic has no real root");
        Int root = isqrt_floor(disc);
        if (root * root != disc)
            return impossible("residual quadratic discriminant is not a square");
        for (const Int& num : {-beta + root, -beta - root}) {
            if (num % (2 * alpha) == 0)
                if (auto r = try_s(num / (2 * alpha))) return *r;
        }
        return impossible("residual quadratic has no integer root");
    }

    Inertia in = rational_inertia(rp.k_gram);
    if (in.zero == 0 && (in.pos == 0 || in.neg == 0)) {
        // definite complement: the residual set is a finite ellipsoid slice
        const int sgn = in.pos > 0 ? 1 : -1;
        Mat g = rp.k_gram;
        if (sgn < 0)
            for (auto& x : g.a) x = -x;
        std::vector<Rat> half_lambda(m);
        for (int i = 0; i < m; ++i) half_lambda[i] = Rat(rp.lambda[i], 2);
        std::vector<Rat> mu = solve_rational(rp.k_gram, half_lambda);
        Rat target = Rat(2 * rp.b);
        for (int i = 0; i < m; ++i) target += mu[i] * half_lambda[i];
        if (sgn < 0) target = -target;
        if (target < 0)
            return impossible("definite complement: the residual ellipsoid is empty");
        auto pts = shifted_ellipsoid_points(g, mu, target);
        if (pts.empty())
            return impossible(
                "definite complement: complete enumeration finds no solution");
        return found(L, ambient_candidate(rp, pts.front()), cons,
                     "direct-definite-complete");
    }

    // reservoir pairs among small combinations of the complement basis
    std::vector<std::vector<Int>> pool;
    for (int i = 0; i < m; ++i) {
        std::vector<Int> e(m, Int(0));
        e[i] = 1;
        pool.push_back(e);
    }
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            for (int sign = -1; sign <= 1; sign += 2) {
                std::vector<Int> e(m, Int(0));
                e[i] = 1;
                e[j] = sign;
                pool.push_back(e);
            }
    for (const auto& u : pool) {
        // single isotropic step: c1 + 2*s*u shifts the square by 8*s*(lambda(u)/2)
        if (k_form(rp, u) != 0) continue;
        Int lu = k_lambda(rp, u);
        if (lu == 0) continue;
        Int mu_u = lu / 2;
        if (mu_u != 0 && rp.b % mu_u == 0) {
            std::vector<Int> z(m, Int(0));
            Int s = rp.b / mu_u;
            for (int i = 0; i < m; ++i) z[i] = s * u[i];
            return found(L, ambient_candidate(rp, z), cons, "direct-isotropic-step");
        }
    }
    for (const auto& u : pool)
        for (const auto& v : pool)
            if (auto hit = reservoir_move(rp, u, v))
                return found(L, ambient_candidate(rp, hit->z), cons, hit->tag);

    // escalating box search over the complement coordinates
    long bound = opts.initial_bound;
    long cap = std::max(opts.max_bound, opts.initial_bound);
    long long evals = 0;
    bool exhausted_by_cap = false;
    while (bound <= cap && !exhausted_by_cap) {
        std::vector<Int> z(m, Int(0));
        const Int target = 2 * rp.b;
        auto descend = [&](auto&& self, int depth, const Int& q_acc,
                           const Int& lin_acc) -> bool {
            if (evals > opts.eval_cap) {
                exhausted_by_cap = true;
                return false;
            }
            if (depth == m) {
                ++evals;
                return q_acc + lin_acc == target;
            }
            Int row_dot = 0;
            for (int j = 0; j < depth; ++j)
                if (rp.k_gram.at(depth, j) != 0) row_dot += rp.k_gram.at(depth, j) * z[j];
            for (Int v = -bound; v <= bound; ++v) {
                z[depth] = v;
                Int q_next = q_acc + rp.k_gram.at(depth, depth) * v * v + 2 * v * row_dot;
                if (self(self, depth + 1, q_next, lin_acc + rp.lambda[depth] * v))
                    return true;
            }
            z[depth] = 0;
            return false;
        };
        if (descend(descend, 0, Int(0), Int(0))) {
            return found(L, ambient_candidate(rp, z), cons, "direct-box-search");
        }
        if (!exhausted_by_cap) bound *= 2;
    }
    ChernResult r;
    r.status = SolveStatus::BudgetExhausted;
    r.bound_used = std::min(bound, cap);
    r.detail = "no certificate within the search budget";
    return r;
}

}  // namespace

ChernResult solve_chern(const GramLattice& L, const ChernConstraint& cons,
                        const SolveOptions& opts) {
    if (cons.gamma.size() != L.rank())
        throw std::invalid_argument("solve_chern: gamma length does not match rank");
    Signature sig = signature(L);
    if (mod_floor(cons.h - sig.tau(), 8) != 0) {
        std::ostringstream os;
        os << "solve_chern: h = " << cons.h << " violates h = tau(Q) mod 8 (tau = "
           << sig.tau() << ")";
        throw std::domain_error(os.str());
    }
    if (auto lay = two_h_layout(L)) return solve_structured(L, cons, *lay);
    return solve_direct(L, cons, opts);
}

}  // namespace latsurf
