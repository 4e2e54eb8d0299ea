#include "qghost/lift.hpp"

#include <numeric>

#include "qghost/error.hpp"

namespace qghost {

Mat solve_in_radical(const QMod& n, const std::array<Elem, kDadeDim>& t, const Mat& target) {
    if (t[dade::kOne] != 0) throw PreconditionError("solve_in_radical: t must lie in the radical");
    if (t[dade::kX] == 0 || t[dade::kY] == 0)
        throw PreconditionError("solve_in_radical: t + J^2 lies on the x or y axis");
    const Field& f = n.field();
    if (target.rows() != n.dim() || target.cols() != 1) throw ShapeError("solve_in_radical: target must be a column");
    if (target.is_zero()) return Mat(f, n.dim(), 1);
    if (!subspace_contains(rad_n(n, 2).basis, target.transpose()))
        throw PreconditionError("solve_in_radical: target is not in rad^2(N)");
    const Mat r1 = rad(n).basis.transpose();
    auto sol = solve(act(n, t) * r1, target);
    if (!sol) throw InvariantError("solve_in_radical: t m = target has no solution in rad(N)");
    return r1 * *sol;
}

std::optional<Mat> solve_leading(const ModMap& f, const Mat& iota, const Mat& m, Letter t) {
    const std::size_t n = iota.rows() / kDadeDim;
    const Mat v = iota * m;
    const std::size_t other = t == Letter::X ? 2 * n : n;
    if (!v.block(0, 0, n, 1).is_zero() || !v.block(other, 0, n, 1).is_zero())
        throw PreconditionError(t == Letter::X ? "solve_leading: m is not in x (x) V + J^2 (x) V"
                                               : "solve_leading: m is not in y (x) V + J^2 (x) V");
    const QMod& target = f.target();
    const Mat w = target.basis_word(t == Letter::X ? dade::kXYX : dade::kYXY);
    return solve(w, f.matrix() * m);
}

ValidationReport validate_triple(const GhostTriple& t) {
    if (!(t.f1.target() == t.f2.source()) || !(t.f2.target() == t.f3.source()))
        return {false, "maps are not composable"};
    const ModMap* maps[] = {&t.f1, &t.f2, &t.f3};
    for (int i = 0; i < 3; ++i) {
        if (!maps[i]->is_homomorphism()) return {false, "f" + std::to_string(i + 1) + " is not a module map"};
        if (!is_ghost(*maps[i])) return {false, "f" + std::to_string(i + 1) + " is not a ghost"};
    }
    if (!is_projective_free(t.source())) return {false, "M is not projective-free"};
    if (!is_projective_free(t.f2.source())) return {false, "N1 is not projective-free"};
    if (!is_projective_free(t.f3.source())) return {false, "N2 is not projective-free"};
    if (!is_projective_free(t.target())) return {false, "N is not projective-free"};
    return {};
}

LiftFlags check_lift(const ModMap& fbar, const ModMap& iota, const ModMap& f) {
    LiftFlags out;
    const std::size_t n = iota.target().dim() / kDadeDim;
    out.extends = fbar.matrix() * iota.matrix() == f.matrix();
    const Mat r2 = rad_n(fbar.target(), 2).basis;
    out.image_in_rad2 = subspace_contains(r2, fbar.matrix().transpose());
    const std::size_t j2 = 3 * n;  // words xy, yx, ... start at index 3
    out.kills_j2 = fbar.matrix().block(0, j2, fbar.matrix().rows(), fbar.matrix().cols() - j2).is_zero();
    return out;
}

namespace {

// Lift over a field where every Case4 factor is linear. Returns the matrix of
// fbar: R (x) V -> N.
Mat lift_split(const QMod& m, const Mat& iota, const ModMap& f, const KroneckerDecomposition& dec) {
    const Field& fld = m.field();
    const QMod& tgt = f.target();
    const std::size_t n = iota.rows() / kDadeDim;
    const std::size_t dn = tgt.dim();
    const Mat rows = iota.transpose();
    const Mat xyx = tgt.basis_word(dade::kXYX), yxy = tgt.basis_word(dade::kYXY);
    const Mat xy = tgt.basis_word(dade::kXY), yx = tgt.basis_word(dade::kYX);
    const Mat both = Mat::hstack(xyx, yxy);
    const Mat zero_v(fld, 1, n);
    const Mat zero_n(fld, dn, 1);

    std::vector<Mat> basis_rows, images;
    auto fm = [&](const Mat& coeff_row) { return f.matrix() * coeff_row.transpose(); };

    for (const auto& s : dec.summands) {
        const std::size_t k = s.n();
        auto e = [&](std::size_t i) { return s.v_basis.block(i - 1, 0, 1, n); };
        if (s.kind == KroneckerCase::Case4) {
            const Poly& p = s.factors.at(0).factor;
            if (p.degree() != 1) throw InvariantError("lift: Case4 factor is not linear over the working field");
            const Elem lambda = p.coeff(0);
            const Mat nil = *s.f_matrix + Mat::identity(fld, k).scaled(lambda);
            // Jordan basis e'_j = nil^(k-j) e_1, so nil e'_1 = 0 and nil e'_j = e'_(j-1)
            std::vector<Mat> ep(k + 1, Mat(fld, 1, n));
            Mat loc(fld, k, 1);
            loc(0, 0) = 1;
            for (std::size_t j = k; j >= 1; --j) {
                ep[j] = loc.transpose() * s.v_basis;
                loc = nil * loc;
            }
            Mat targets(fld, 0, 2 * n);
            for (std::size_t j = 1; j <= k; ++j) {
                Mat w = ep[j].scaled(lambda);
                if (j > 1) w = w + ep[j - 1];
                targets = Mat::vstack(targets, Mat::hstack(ep[j], w));
            }
            const Mat reps = pick_representatives(rows, n, targets);
            std::array<Elem, kDadeDim> t{};
            t[dade::kX] = 1;
            t[dade::kY] = lambda;
            const Submodule r1 = rad(tgt);
            const QMod rmod = r1.module();
            Mat prev = zero_n;
            for (std::size_t j = 1; j <= k; ++j) {
                Mat goal = fm(reps.block(j - 1, 0, 1, reps.cols()));
                if (j > 1) goal = goal + tgt.y() * prev;
                const Mat local_goal =
                    goal.is_zero() ? Mat(fld, rmod.dim(), 1) : coordinates(r1.basis, goal.transpose()).transpose();
                const Mat local = solve_in_radical(rmod, t, local_goal);
                prev = r1.basis.transpose() * local;
                basis_rows.push_back(ep[j]);
                images.push_back(prev);
            }
            continue;
        }
        // p_1..p_k and the index range j of l_j = (p_j, p_(j+1)), p_0 = p_(k+1) = 0
        std::vector<Mat> p(k + 2, zero_v);
        std::size_t j_lo = 0, j_hi = k;
        switch (s.kind) {
            case KroneckerCase::Case1: for (std::size_t i = 1; i <= k; ++i) p[i] = e(k + 1 - i); break;
            case KroneckerCase::Case2a:
                for (std::size_t i = 1; i <= k; ++i) p[i] = e(k + 1 - i);
                j_lo = 1;
                break;
            case KroneckerCase::Case2b:
                for (std::size_t i = 1; i <= k; ++i) p[i] = e(i);
                j_hi = k - 1;
                break;
            case KroneckerCase::Case3:
                for (std::size_t i = 1; i <= k; ++i) p[i] = e(k + 1 - i);
                j_lo = 1;
                j_hi = k - 1;
                break;
            case KroneckerCase::Case4: break;
        }
        std::vector<Mat> a(k + 1, zero_n), b(k + 1, zero_n);
        if (j_lo <= j_hi) {
            Mat targets(fld, 0, 2 * n);
            for (std::size_t j = j_lo; j <= j_hi; ++j) targets = Mat::vstack(targets, Mat::hstack(p[j], p[j + 1]));
            const Mat reps = pick_representatives(rows, n, targets);
            for (std::size_t j = j_lo; j <= j_hi; ++j) {
                const Mat mj = reps.block(j - j_lo, 0, 1, reps.cols()).transpose();
                const bool lead_y = p[j].is_zero();
                const bool lead_x = p[j + 1].is_zero();
                if (lead_y || lead_x) {
                    // boundary: a_0 = 0 or b_k = 0
                    auto sol = solve_leading(f, iota, mj, lead_y ? Letter::Y : Letter::X);
                    if (!sol) throw InvariantError("lift: threefold ghost hypothesis violated (no leading solution)");
                    (lead_y ? b[j] : a[j]) = *sol;
                } else {
                    auto sol = solve(both, f.matrix() * mj);
                    if (!sol) throw InvariantError("lift: f(m) is not in xyx N + yxy N");
                    a[j] = sol->block(0, 0, dn, 1);
                    b[j] = sol->block(dn, 0, dn, 1);
                }
            }
        }
        for (std::size_t j = 1; j <= k; ++j) {
            basis_rows.push_back(p[j]);
            images.push_back(xy * b[j - 1] + yx * a[j]);
        }
    }

    Mat e(fld, 0, n), g(fld, dn, 0);
    for (std::size_t i = 0; i < basis_rows.size(); ++i) {
        e = Mat::vstack(e, basis_rows[i]);
        g = Mat::hstack(g, images[i]);
    }
    auto e_inv = inverse(e.transpose());
    if (!e_inv) throw InvariantError("lift: summand bases do not form a basis of V");
    const Mat g_std = g * *e_inv;
    Mat fbar(fld, dn, kDadeDim * n);
    for (std::size_t w = 0; w < kDadeDim; ++w) {
        const Mat cols = tgt.basis_word(w) * g_std;
        fbar.set_block(0, w * n, cols);
    }
    return fbar;
}

}  // namespace

LiftCertificate build_lift(const ModMap& f, const ModMap& iota) {
    const QMod& m = f.source();
    const QMod& tgt = f.target();
    const Field& base = m.field();
    if (!(iota.source() == m)) throw PreconditionError("lift: embedding has the wrong source");
    if (iota.target().dim() % kDadeDim != 0 || !(iota.target() == free_module(base, iota.target().dim() / kDadeDim)))
        throw PreconditionError("lift: embedding target is not R (x) V");
    if (rank(iota.matrix()) != m.dim()) throw PreconditionError("lift: embedding is not injective");
    if (!is_projective_free(tgt)) throw PreconditionError("lift: target is not projective-free");
    const std::size_t n = iota.target().dim() / kDadeDim;
    if (!iota.matrix().block(0, 0, n, m.dim()).is_zero())
        throw PreconditionError("lift: embedding does not land in J (x) V");
    if (!subspace_contains(rad_n(tgt, 3).basis, f.matrix().transpose()))
        throw PreconditionError("lift: image(f) is not inside rad^3(N), so f is not a threefold ghost");

    const Mat rows = iota.matrix().transpose();
    KroneckerDecomposition dec = decompose(relation_of_module(rows, n));
    unsigned lcm_deg = 1;
    std::size_t ext_summands = 0;
    for (const auto& s : dec.summands)
        for (const auto& pf : s.factors) {
            const unsigned d = static_cast<unsigned>(pf.factor.degree());
            lcm_deg = std::lcm(lcm_deg, d);
            if (d > 1) ++ext_summands;
        }

    std::vector<Field> tower{base};
    Mat fbar(base, tgt.dim(), kDadeDim * n);
    if (lcm_deg == 1) {
        fbar = lift_split(m, iota.matrix(), f, dec);
    } else {
        const unsigned deg = base.degree() * lcm_deg;
        if (deg > 16) throw PreconditionError("lift: splitting field has degree above 16");
        const Field ext = Field::make(deg);
        const FieldEmbedding emb = field_embed(base, ext);
        tower.push_back(ext);
        const Mat iota_e = base_change(iota.matrix(), emb);
        const ModMap f_e = base_change(f, emb);
        const KroneckerDecomposition dec_e = decompose(relation_of_module(iota_e.transpose(), n));
        fbar = retract(lift_split(f_e.source(), iota_e, f_e, dec_e), emb);
    }
    ModMap fbar_map(iota.target(), tgt, fbar);
    LiftFlags flags = check_lift(fbar_map, iota, f);
    if (!fbar_map.is_homomorphism()) flags.extends = false;
    if (!flags.all()) throw InvariantError("lift: certificate fails verification");
    return {iota, std::move(fbar_map), flags, std::move(tower), std::move(dec), ext_summands};
}

LiftCertificate build_lift(const GhostTriple& triple, const ModMap& iota) {
    const ValidationReport v = validate_triple(triple);
    if (!v.ok) throw PreconditionError("lift: " + v.violation);
    return build_lift(triple.composite(), iota);
}

LiftCertificate build_lift(const GhostTriple& triple) {
    const ValidationReport v = validate_triple(triple);
    if (!v.ok) throw PreconditionError("lift: " + v.violation);
    return build_lift(triple.composite(), injective_embedding(triple.source()).iota);
}

OracleReport stable_triviality_oracle_compare(const GhostTriple& triple, const std::optional<ModMap>& iota) {
    OracleReport out;
    const ModMap f = triple.composite();
    out.direct_trivial = stably_trivial(f);
    try {
        out.certificate = iota ? build_lift(triple, *iota) : build_lift(triple);
        out.lift_trivial = true;
    } catch (const Error& e) {
        out.lift_error = e.what();
    }
    return out;
}

}  // namespace qghost
