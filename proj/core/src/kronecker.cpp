#include "qghost/kronecker.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "qghost/error.hpp"

namespace qghost {

LinearRelation LinearRelation::make(std::size_t n, Mat basis) {
    if (basis.cols() != 2 * n) throw PreconditionError("relation rows must have length 2n");
    if (rank(basis) != basis.rows()) throw PreconditionError("relation basis rows are dependent");
    return {n, std::move(basis)};
}

std::string_view case_name(KroneckerCase c) {
    switch (c) {
        case KroneckerCase::Case1: return "Case1";
        case KroneckerCase::Case2a: return "Case2a";
        case KroneckerCase::Case2b: return "Case2b";
        case KroneckerCase::Case3: return "Case3";
        case KroneckerCase::Case4: return "Case4";
    }
    return "?";
}

std::optional<std::vector<Mat>> invariant_complement(const std::vector<std::size_t>& dims,
                                                     const std::vector<QuiverArrow>& arrows,
                                                     const std::vector<Mat>& sub) {
    const std::size_t nv = dims.size();
    if (sub.size() != nv) throw ShapeError("invariant_complement: one subspace per vertex");
    const Field& f = sub.front().field();
    std::vector<Mat> s, c, frame, frame_inv;
    std::vector<std::size_t> off(nv + 1, 0);
    for (std::size_t v = 0; v < nv; ++v) {
        s.push_back(row_space(sub[v]));
        c.push_back(standard_complement(s[v]));
        frame.push_back(Mat::vstack(s[v], c[v]).transpose());
        if (dims[v] == 0)
            frame_inv.push_back(Mat(f, 0, 0));
        else
            frame_inv.push_back(*inverse(frame[v]));
        off[v + 1] = off[v] + s[v].rows() * c[v].rows();
    }
    std::size_t eqs = 0;
    for (const auto& a : arrows) eqs += s[a.to].rows() * c[a.from].rows();
    Mat sys(f, eqs, off[nv]);
    Mat rhs(f, eqs, 1);
    std::size_t row0 = 0;
    for (const auto& a : arrows) {
        const std::size_t st = s[a.to].rows(), ct = c[a.to].rows();
        const std::size_t sf = s[a.from].rows(), cf = c[a.from].rows();
        if (dims[a.to] == 0 || dims[a.from] == 0) continue;
        const Mat hat = frame_inv[a.to] * a.map * frame[a.from];
        if (!hat.block(st, 0, ct, sf).is_zero())
            throw PreconditionError("invariant_complement: subspace is not invariant");
        if (st == 0 || cf == 0) continue;
        const Mat a_ss = hat.block(0, 0, st, sf);
        const Mat a_sc = hat.block(0, sf, st, cf);
        const Mat a_cc = hat.block(st, sf, ct, cf);
        // A_SS Phi_from + Phi_to A_CC = A_SC
        if (sf > 0) {
            const Mat t1 = Mat::kron(a_ss, Mat::identity(f, cf));
            for (std::size_t i = 0; i < t1.rows(); ++i)
                for (std::size_t j = 0; j < t1.cols(); ++j) sys(row0 + i, off[a.from] + j) ^= t1(i, j);
        }
        if (ct > 0) {
            const Mat t2 = Mat::kron(Mat::identity(f, st), a_cc.transpose());
            for (std::size_t i = 0; i < t2.rows(); ++i)
                for (std::size_t j = 0; j < t2.cols(); ++j) sys(row0 + i, off[a.to] + j) ^= t2(i, j);
        }
        for (std::size_t i = 0; i < st; ++i)
            for (std::size_t j = 0; j < cf; ++j) rhs(row0 + i * cf + j, 0) = a_sc(i, j);
        row0 += st * cf;
    }
    std::optional<Mat> sol;
    if (off[nv] == 0)
        sol = rhs.is_zero() ? std::optional<Mat>(Mat(f, 0, 1)) : std::nullopt;
    else
        sol = solve(sys, rhs);
    if (!sol) return std::nullopt;
    std::vector<Mat> out;
    for (std::size_t v = 0; v < nv; ++v) {
        const std::size_t sv = s[v].rows(), cv = c[v].rows();
        Mat phi(f, sv, cv);
        for (std::size_t i = 0; i < sv; ++i)
            for (std::size_t j = 0; j < cv; ++j) phi(i, j) = (*sol)(off[v] + i * cv + j, 0);
        out.push_back(sv == 0 ? c[v] : c[v] + phi.transpose() * s[v]);
    }
    return out;
}

std::vector<Mat> nilpotent_chains(const Mat& g) {
    const Field& f = g.field();
    const std::size_t k = g.rows();
    std::vector<Mat> kernels{Mat(f, 0, k)};
    Mat power = Mat::identity(f, k);
    while (kernels.back().rows() < k) {
        power = power * g;
        kernels.push_back(row_space(kernel(power)));
        if (kernels.size() > k + 1) throw PreconditionError("nilpotent_chains: map is not nilpotent");
    }
    const Mat gt = g.transpose();
    std::vector<std::pair<Mat, std::size_t>> tops;  // (vector, level)
    for (std::size_t level = kernels.size() - 1; level >= 1; --level) {
        Mat span = kernels[level - 1];
        for (const auto& [t, lvl] : tops) {
            Mat v = t;
            for (std::size_t i = level; i < lvl; ++i) v = v * gt;
            span = subspace_sum(span, v);
        }
        const Mat& kl = kernels[level];
        for (std::size_t r = 0; r < kl.rows(); ++r) {
            const Mat v = kl.block(r, 0, 1, k);
            if (subspace_contains(span, v)) continue;
            span = subspace_sum(span, v);
            tops.emplace_back(v, level);
        }
    }
    std::vector<Mat> chains;
    for (const auto& [t, lvl] : tops) {
        Mat e(f, lvl, k);
        Mat v = t;
        for (std::size_t j = lvl; j >= 1; --j) {
            e.set_block(j - 1, 0, v);
            v = v * gt;
        }
        chains.push_back(std::move(e));
    }
    return chains;
}

namespace {

// Matrix of f restricted to the invariant subspace with basis rows b.
Mat restricted(const Mat& f, const Mat& b) {
    if (b.rows() == 0) return Mat(f.field(), 0, 0);
    return coordinates(b, (f * b.transpose()).transpose()).transpose();
}

}  // namespace

std::vector<CyclicBlock> primary_cyclic_decomposition(const Mat& f) {
    const Field& fld = f.field();
    std::vector<CyclicBlock> out;
    if (f.rows() == 0) return out;
    for (const auto& [p, mult] : poly_factor(char_poly(f))) {
        Mat space = row_space(kernel(p.pow(mult).eval(f)));
        Mat local = restricted(f, space);
        while (space.rows() > 0) {
            const std::size_t dim = space.rows();
            unsigned e = 1;
            while (!p.pow(e).eval(local).is_zero()) ++e;
            const Mat below = p.pow(e - 1).eval(local);
            std::size_t pick = 0;
            while (below.column(pick) == std::vector<Elem>(dim, 0)) ++pick;
            const std::size_t len = static_cast<std::size_t>(p.degree()) * e;
            Mat z(fld, len, dim);
            Mat v(fld, 1, dim);
            v(0, pick) = 1;
            for (std::size_t i = 0; i < len; ++i) {
                z.set_block(i, 0, v);
                v = v * local.transpose();
            }
            if (rank(z) != len) throw InvariantError("cyclic block is degenerate");
            out.push_back({z * space, p, e});
            if (len == dim) break;
            auto comp = invariant_complement({dim}, {{0, 0, local}}, {z});
            if (!comp) throw InvariantError("cyclic block has no invariant complement");
            const Mat& c = (*comp)[0];
            local = restricted(local, c);
            space = c * space;
        }
    }
    return out;
}

namespace {

// A quiver representation a, b: W -> V in local coordinates, with the rows of
// vb giving the local basis of V in ambient coordinates.
struct Part {
    Mat vb;
    Mat a;
    Mat b;
    std::size_t dw() const { return a.cols(); }
    std::size_t dv() const { return a.rows(); }
};

Mat images(const Mat& m, const Mat& rows) {
    if (rows.rows() == 0) return Mat(m.field(), 0, m.rows());
    return (m * rows.transpose()).transpose();
}

Part restrict_part(const Part& p, const Mat& sw, const Mat& sv) {
    const Field& f = p.a.field();
    auto local = [&](const Mat& m) {
        if (sv.rows() == 0 || sw.rows() == 0) return Mat(f, sv.rows(), sw.rows());
        return coordinates(sv, images(m, sw)).transpose();
    };
    return {sv.rows() == 0 ? Mat(f, 0, p.vb.cols()) : sv * p.vb, local(p.a), local(p.b)};
}

std::pair<Part, Part> split(const Part& p, const Mat& sw, const Mat& sv) {
    const Mat w = row_space(sw), v = row_space(sv);
    auto comp = invariant_complement({p.dw(), p.dv()}, {{0, 1, p.a}, {0, 1, p.b}}, {w, v});
    if (!comp) throw InvariantError("kronecker: summand does not split off");
    return {restrict_part(p, w, v), restrict_part(p, (*comp)[0], (*comp)[1])};
}

// Solutions (l_0..l_eps) of a l_0 = 0, a l_{j+1} = b l_j, b l_eps = 0.
Mat chain_space(const Mat& a, const Mat& b, std::size_t eps) {
    const Field& f = a.field();
    const std::size_t dv = a.rows(), dw = a.cols();
    if (dw == 0) return Mat(f, 0, 0);
    Mat sys(f, (eps + 2) * dv, (eps + 1) * dw);
    sys.set_block(0, 0, a);
    for (std::size_t j = 0; j < eps; ++j) {
        sys.set_block((j + 1) * dv, (j + 1) * dw, a);
        sys.set_block((j + 1) * dv, j * dw, b);
    }
    sys.set_block((eps + 1) * dv, eps * dw, b);
    return row_space(kernel(sys));
}

// Span of every l_j over all chains: the W-part of the Case1-type summands.
std::pair<Mat, Mat> chain_trace(const Mat& a, const Mat& b) {
    const Field& f = a.field();
    const std::size_t dv = a.rows(), dw = a.cols();
    Mat w(f, 0, dw);
    for (std::size_t eps = 0; eps <= dv + 1 && dw > 0; ++eps) {
        const Mat c = chain_space(a, b, eps);
        for (std::size_t j = 0; j <= eps; ++j) w = Mat::vstack(w, c.block(0, j * dw, c.rows(), dw));
        w = row_space(w);
    }
    const Mat v = row_space(Mat::vstack(images(a, w), images(b, w)));
    return {w, v};
}

// Minimal chains chosen by increasing length: complements of the shifted
// shorter chains.
std::vector<Mat> select_chains(const Mat& a, const Mat& b) {
    const Field& f = a.field();
    const std::size_t dv = a.rows(), dw = a.cols();
    std::vector<Mat> chains;
    std::size_t covered = 0;
    Mat prev(f, 0, 0);
    for (std::size_t eps = 0; covered < dw && eps <= dv + 1; ++eps) {
        const std::size_t len = (eps + 1) * dw;
        Mat span(f, 0, len);
        if (eps > 0 && prev.rows() > 0) {
            Mat lo(f, prev.rows(), len), hi(f, prev.rows(), len);
            lo.set_block(0, 0, prev);
            hi.set_block(0, dw, prev);
            span = row_space(Mat::vstack(lo, hi));
        }
        const Mat c = chain_space(a, b, eps);
        for (std::size_t r = 0; r < c.rows(); ++r) {
            const Mat v = c.block(r, 0, 1, len);
            if (subspace_contains(span, v)) continue;
            span = subspace_sum(span, v);
            Mat chain(f, eps + 1, dw);
            for (std::size_t j = 0; j <= eps; ++j) chain.set_block(j, 0, v.block(0, j * dw, 1, dw));
            chains.push_back(std::move(chain));
            covered += eps + 1;
        }
        prev = c;
    }
    if (covered != dw) throw InvariantError("kronecker: chains do not cover the summand");
    return chains;
}

// Row (u | w) in ambient coordinates for a local W vector l.
Mat pair_row(const Part& p, const Mat& l) {
    const Mat u = images(p.a, l) * p.vb;
    const Mat w = images(p.b, l) * p.vb;
    return Mat::hstack(u, w);
}

Mat stack_rows(const Field& f, std::size_t width, const std::vector<Mat>& rows) {
    Mat out(f, 0, width);
    for (const auto& r : rows) out = Mat::vstack(out, r);
    return out;
}

void emit_case1(const Part& p, std::vector<KroneckerSummand>& out) {
    const Field& f = p.a.field();
    const std::size_t width = p.vb.cols();
    for (const Mat& chain : select_chains(p.a, p.b)) {
        const std::size_t n = chain.rows() - 1;
        std::vector<Mat> es, ls;
        // e_k = a(l_{n+1-k}); rows of L in order l_n, ..., l_0
        for (std::size_t k = 1; k <= n; ++k) es.push_back(images(p.a, chain.block(n + 1 - k, 0, 1, p.dw())) * p.vb);
        for (std::size_t j = n + 1; j-- > 0;) ls.push_back(pair_row(p, chain.block(j, 0, 1, p.dw())));
        out.push_back({KroneckerCase::Case1, stack_rows(f, width, es), stack_rows(f, 2 * width, ls), {}, {}, {}});
    }
}

void emit_case3(const Part& p, std::vector<KroneckerSummand>& out) {
    const Field& f = p.a.field();
    const std::size_t width = p.vb.cols();
    const std::vector<Mat> chains = select_chains(p.a.transpose(), p.b.transpose());
    std::vector<Mat> lrows, frows;
    for (const Mat& chain : chains)
        for (std::size_t j = 0; j < chain.rows(); ++j) {
            const Mat l = chain.block(j, 0, 1, p.dv());
            lrows.push_back(l);
            if (j > 0) frows.push_back(l * p.a);
        }
    const Mat qv = inverse(stack_rows(f, p.dv(), lrows))->transpose();
    Mat qw(f, 0, 0);
    if (p.dw() > 0) qw = inverse(stack_rows(f, p.dw(), frows))->transpose();
    std::size_t li = 0, fi = 0;
    for (const Mat& chain : chains) {
        const std::size_t n = chain.rows();
        std::vector<Mat> es, ls;
        for (std::size_t k = 0; k < n; ++k) es.push_back(qv.block(li + k, 0, 1, p.dv()) * p.vb);
        for (std::size_t i = 0; i + 1 < n; ++i) ls.push_back(pair_row(p, qw.block(fi + i, 0, 1, p.dw())));
        li += n;
        fi += n - 1;
        out.push_back({KroneckerCase::Case3, stack_rows(f, width, es), stack_rows(f, 2 * width, ls), {}, {}, {}});
    }
}

// Case2 summands: `inv` is the invertible one of a, b and `other` the other;
// chains of the nilpotent other * inv^-1.
void emit_case2(const Part& p, bool b_invertible, std::vector<KroneckerSummand>& out) {
    const Field& f = p.a.field();
    const std::size_t width = p.vb.cols();
    const Mat& inv_src = b_invertible ? p.b : p.a;
    const Mat& other = b_invertible ? p.a : p.b;
    const Mat inv = *inverse(inv_src);
    for (const Mat& e : nilpotent_chains(other * inv)) {
        std::vector<Mat> es, ls;
        for (std::size_t k = 0; k < e.rows(); ++k) {
            const Mat ek = e.block(k, 0, 1, p.dv());
            es.push_back(ek * p.vb);
            ls.push_back(pair_row(p, images(inv, ek)));
        }
        out.push_back({b_invertible ? KroneckerCase::Case2b : KroneckerCase::Case2a, stack_rows(f, width, es),
                       stack_rows(f, 2 * width, ls), {}, {}, {}});
    }
}

void emit_case4(const Part& p, std::vector<KroneckerSummand>& out) {
    const Field& f = p.a.field();
    const std::size_t width = p.vb.cols();
    const Mat a_inv = *inverse(p.a);
    const Mat fmap = p.b * a_inv;
    for (const auto& blk : primary_cyclic_decomposition(fmap)) {
        std::vector<Mat> ls;
        for (std::size_t k = 0; k < blk.basis.rows(); ++k)
            ls.push_back(pair_row(p, images(a_inv, blk.basis.block(k, 0, 1, p.dv()))));
        KroneckerSummand s{KroneckerCase::Case4, blk.basis * p.vb, stack_rows(f, 2 * width, ls), {}, {}, {}};
        s.f_matrix = restricted(fmap, blk.basis);
        s.char_poly = blk.factor.pow(blk.exponent);
        s.factors = {{blk.factor, blk.exponent}};
        out.push_back(std::move(s));
    }
}

// Increasing sequence U_1 = ker a, U_{i+1} = a^-1(b U_i).
Mat grow(const Mat& a, const Mat& b) {
    Mat u = row_space(kernel(a));
    if (u.rows() == 0) return u;
    for (;;) {
        Mat next = preimage(a, row_space(images(b, u)));
        if (next.rows() == u.rows()) return u;
        u = std::move(next);
    }
}

}  // namespace

KroneckerDecomposition decompose(const LinearRelation& rel) {
    const Field& f = rel.field();
    const std::size_t n = rel.n, d = rel.dim();
    Part p{Mat::identity(f, n), rel.basis.block(0, 0, d, n).transpose(), rel.basis.block(0, n, d, n).transpose()};
    if (d == 0) {
        p.a = Mat(f, n, 0);
        p.b = Mat(f, n, 0);
    }
    std::vector<KroneckerSummand> out;

    if (auto [w, v] = chain_trace(p.a, p.b); w.rows() > 0) {
        auto [sub, rest] = split(p, w, v);
        emit_case1(sub, out);
        p = std::move(rest);
    }
    if (p.dv() > 0) {
        // Case3 summands are the Case1-type part of the dual representation.
        auto [dv_rows, dw_rows] = chain_trace(p.a.transpose(), p.b.transpose());
        if (dv_rows.rows() > 0) {
            auto comp = invariant_complement({p.dv(), p.dw()},
                                             {{0, 1, p.a.transpose()}, {0, 1, p.b.transpose()}},
                                             {dv_rows, dw_rows});
            if (!comp) throw InvariantError("kronecker: dual summand does not split off");
            const Mat tv = Mat::vstack(row_space(dv_rows), (*comp)[0]);
            const Mat qv = inverse(tv)->transpose();
            const std::size_t k3 = dv_rows.rows();
            Mat qw(f, 0, p.dw());
            std::size_t m3 = 0;
            if (p.dw() > 0) {
                const Mat tw = Mat::vstack(row_space(dw_rows), (*comp)[1]);
                qw = inverse(tw)->transpose();
                m3 = row_space(dw_rows).rows();
            }
            const Part p3 = restrict_part(p, qw.block(0, 0, m3, p.dw()), qv.block(0, 0, k3, p.dv()));
            const Part rest = restrict_part(p, qw.block(m3, 0, p.dw() - m3, p.dw()),
                                            qv.block(k3, 0, p.dv() - k3, p.dv()));
            emit_case3(p3, out);
            p = rest;
        }
    }
    if (Mat u = grow(p.a, p.b); u.rows() > 0) {
        auto [sub, rest] = split(p, u, images(p.b, u));
        emit_case2(sub, true, out);
        p = std::move(rest);
    }
    if (Mat u = grow(p.b, p.a); u.rows() > 0) {
        auto [sub, rest] = split(p, u, images(p.a, u));
        emit_case2(sub, false, out);
        p = std::move(rest);
    }
    if (p.dv() > 0) {
        if (p.dw() != p.dv()) throw InvariantError("kronecker: regular remainder is not square");
        emit_case4(p, out);
    }

    Mat cob(f, 0, n);
    for (const auto& s : out) cob = Mat::vstack(cob, s.v_basis);
    return {std::move(out), std::move(cob)};
}

bool check_shape(const KroneckerSummand& s) {
    const Field& f = s.v_basis.field();
    const std::size_t n = s.n(), width = s.v_basis.cols();
    if (n == 0) return false;
    const Mat zero(f, 1, width);
    auto e = [&](std::size_t k) { return s.v_basis.block(k - 1, 0, 1, width); };
    std::vector<Mat> want;
    switch (s.kind) {
        case KroneckerCase::Case1:
            want.push_back(Mat::hstack(e(1), zero));
            for (std::size_t k = 2; k <= n; ++k) want.push_back(Mat::hstack(e(k), e(k - 1)));
            want.push_back(Mat::hstack(zero, e(n)));
            break;
        case KroneckerCase::Case2a:
            want.push_back(Mat::hstack(e(1), zero));
            for (std::size_t k = 2; k <= n; ++k) want.push_back(Mat::hstack(e(k), e(k - 1)));
            break;
        case KroneckerCase::Case2b:
            want.push_back(Mat::hstack(zero, e(1)));
            for (std::size_t k = 2; k <= n; ++k) want.push_back(Mat::hstack(e(k - 1), e(k)));
            break;
        case KroneckerCase::Case3:
            for (std::size_t k = 2; k <= n; ++k) want.push_back(Mat::hstack(e(k), e(k - 1)));
            break;
        case KroneckerCase::Case4: {
            if (!s.f_matrix || !s.char_poly || s.factors.size() != 1) return false;
            const Poly& p = s.factors[0].factor;
            if (!is_irreducible(p) || p.pow(s.factors[0].multiplicity) != *s.char_poly) return false;
            if (!(companion(*s.char_poly) == *s.f_matrix)) return false;
            for (std::size_t k = 1; k <= n; ++k) {
                Mat fe(f, 1, width);
                for (std::size_t j = 1; j <= n; ++j)
                    if (Elem c = (*s.f_matrix)(j - 1, k - 1)) fe = fe + e(j).scaled(c);
                want.push_back(Mat::hstack(e(k), fe));
            }
            break;
        }
    }
    if (want.size() != s.l_basis.rows()) return false;
    for (std::size_t i = 0; i < want.size(); ++i)
        if (!(want[i] == s.l_basis.block(i, 0, 1, 2 * width))) return false;
    return true;
}

bool verify_decomposition(const LinearRelation& rel, const KroneckerDecomposition& d, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    const Field& f = rel.field();
    const std::size_t n = rel.n;
    std::size_t total_v = 0, total_l = 0;
    Mat all_l(f, 0, 2 * n);
    for (std::size_t i = 0; i < d.summands.size(); ++i) {
        const auto& s = d.summands[i];
        if (!check_shape(s)) return fail("summand " + std::to_string(i) + " fails its case shape");
        total_v += s.n();
        total_l += s.l_basis.rows();
        if (s.l_basis.rows() > 0) {
            if (!subspace_contains(row_space(rel.basis), s.l_basis))
                return fail("summand " + std::to_string(i) + " is not inside L");
            const Mat vi = s.v_basis;
            const Mat vi2 = Mat::vstack(Mat::hstack(vi, Mat(f, vi.rows(), n)), Mat::hstack(Mat(f, vi.rows(), n), vi));
            if (!subspace_contains(row_space(vi2), s.l_basis))
                return fail("summand " + std::to_string(i) + " leaves V_i^2");
        }
        all_l = Mat::vstack(all_l, s.l_basis);
    }
    if (total_v != n || rank(d.change_of_basis) != n) return fail("V is not the direct sum of the V_i");
    if (total_l != rel.dim() || rank(all_l) != rel.dim()) return fail("L is not the direct sum of the L_i");
    if (!subspace_equal(row_space(all_l), row_space(rel.basis))) return fail("the L_i do not span L");
    return true;
}

namespace {

// Calls fn on every rref k x n matrix of rank k.
template <class Fn>
void for_each_rref(const Field& f, std::size_t k, std::size_t n, Fn&& fn) {
    std::vector<std::size_t> piv(k);
    for (std::size_t i = 0; i < k; ++i) piv[i] = i;
    const std::uint64_t q = f.order();
    for (;;) {
        std::vector<std::pair<std::size_t, std::size_t>> free;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t c = piv[i] + 1; c < n; ++c)
                if (std::find(piv.begin(), piv.end(), c) == piv.end()) free.emplace_back(i, c);
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < free.size(); ++i) total *= q;
        for (std::uint64_t code = 0; code < total; ++code) {
            Mat m(f, k, n);
            for (std::size_t i = 0; i < k; ++i) m(i, piv[i]) = 1;
            std::uint64_t rest = code;
            for (const auto& [i, c] : free) {
                m(i, c) = static_cast<Elem>(rest % q);
                rest /= q;
            }
            if (fn(m)) return;
        }
        // next pivot combination
        std::size_t i = k;
        while (i > 0 && piv[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++piv[i - 1];
        for (std::size_t j = i; j < k; ++j) piv[j] = piv[j - 1] + 1;
    }
}

Mat square_of(const Mat& v, std::size_t n) {
    const Field& f = v.field();
    return Mat::vstack(Mat::hstack(v, Mat(f, v.rows(), n)), Mat::hstack(Mat(f, v.rows(), n), v));
}

}  // namespace

bool is_indecomposable_exhaustive(const LinearRelation& rel) {
    const Field& f = rel.field();
    const std::size_t n = rel.n;
    if (n == 0) return false;
    const std::uint64_t q = f.order();
    double work = 1;
    for (std::size_t i = 0; i < n * n; ++i) work *= static_cast<double>(q);
    if (work > double(1 << 20)) throw PreconditionError("exhaustive indecomposability search is too large");
    const Mat l = row_space(rel.basis);
    bool split_found = false;
    for (std::size_t k = 1; k < n && !split_found; ++k) {
        for_each_rref(f, k, n, [&](const Mat& v1) {
            const Mat l1 = subspace_intersect(l, square_of(v1, n));
            const Mat c = standard_complement(v1);
            const std::size_t cells = (n - k) * k;
            std::uint64_t total = 1;
            for (std::size_t i = 0; i < cells; ++i) total *= q;
            for (std::uint64_t code = 0; code < total; ++code) {
                Mat phi(f, n - k, k);
                std::uint64_t rest = code;
                for (std::size_t i = 0; i < cells; ++i) {
                    phi(i / k, i % k) = static_cast<Elem>(rest % q);
                    rest /= q;
                }
                const Mat v2 = c + phi * v1;
                const Mat l2 = subspace_intersect(l, square_of(v2, n));
                if (l1.rows() + l2.rows() == l.rows()) {
                    split_found = true;
                    return true;
                }
            }
            return false;
        });
    }
    return !split_found;
}

LinearRelation relation_of_module(const Mat& rows, std::size_t n) {
    if (rows.cols() != kDadeDim * n) throw ShapeError("relation_of_module: rows must live in R (x) V");
    if (!rows.block(0, 0, rows.rows(), n).is_zero())
        throw PreconditionError("relation_of_module: submodule is not inside J (x) V");
    return LinearRelation::make(n, row_space(rows.block(0, n, rows.rows(), 2 * n)));
}

Mat pick_representatives(const Mat& rows, std::size_t n, const Mat& targets) {
    const Field& f = rows.field();
    if (targets.rows() == 0) return Mat(f, 0, rows.rows());
    if (rows.rows() == 0) throw InvariantError("pick_representatives: empty module");
    const Mat lead = rows.block(0, n, rows.rows(), 2 * n);
    auto sol = solve(lead.transpose(), targets.transpose());
    if (!sol) throw InvariantError("pick_representatives: some relation vector has no representative");
    return sol->transpose();
}

namespace {

std::string hex_row(const Mat& m, std::size_t r) {
    std::string out;
    char buf[8];
    for (std::size_t c = 0; c < m.cols(); ++c) {
        std::snprintf(buf, sizeof buf, "%x", m(r, c));
        if (c) out += ' ';
        out += buf;
    }
    return out;
}

}  // namespace

std::string summand_report(const KroneckerDecomposition& d) {
    std::ostringstream os;
    os << "summands=" << d.summands.size() << "\n";
    for (std::size_t i = 0; i < d.summands.size(); ++i) {
        const auto& s = d.summands[i];
        os << "summand " << i << " case=" << case_name(s.kind) << " n=" << s.n() << " dimL=" << s.l_basis.rows()
           << "\n";
        for (std::size_t k = 0; k < s.n(); ++k) os << "  e" << k + 1 << " = " << hex_row(s.v_basis, k) << "\n";
        for (std::size_t k = 0; k < s.l_basis.rows(); ++k)
            os << "  l" << k + 1 << " = " << hex_row(s.l_basis, k) << "\n";
        if (s.char_poly) {
            os << "  charpoly = " << s.char_poly->to_string() << "\n";
            for (const auto& pf : s.factors)
                os << "  factor = (" << pf.factor.to_string() << ")^" << pf.multiplicity << "\n";
        }
    }
    return os.str();
}

}  // namespace qghost
