#include "qghost/module.hpp"

#include <algorithm>

#include "qghost/error.hpp"
#include "qghost/rng.hpp"

namespace qghost {

ValidationReport validate_qmod(const QMod& m) {
    const Mat& x = m.x();
    const Mat& y = m.y();
    if (x.field() != y.field()) return {false, "x and y over different fields"};
    const Mat xx = x * x;
    const Mat yy = y * y;
    const Mat xy = x * y;
    const Mat yx = y * x;
    if (xx != yx * y) return {false, "x^2 = yxy"};
    if (yy != xy * x) return {false, "y^2 = xyx"};
    if (!(x * yy).is_zero()) return {false, "xy^2 = 0"};
    if (!(yy * x).is_zero()) return {false, "y^2x = 0"};
    if (!(xx * y).is_zero()) return {false, "x^2y = 0"};
    if (!(y * xx).is_zero()) return {false, "yx^2 = 0"};
    // all 32 words of length five
    std::vector<Mat> layer{x, y};
    for (int len = 2; len <= 5; ++len) {
        std::vector<Mat> next;
        next.reserve(layer.size() * 2);
        for (const Mat& w : layer) {
            next.push_back(x * w);
            next.push_back(y * w);
        }
        layer = std::move(next);
    }
    for (const Mat& w : layer)
        if (!w.is_zero()) return {false, "words of length 5 vanish"};
    return {};
}

QMod restrict_module(const QMod& m, const Mat& b) {
    const std::size_t r = b.rows();
    if (r == 0) return QMod(m.field());
    if (b.cols() != m.dim()) throw ShapeError("subspace basis has wrong width");
    const RrefResult rr = rref(b);
    if (rr.rank != r || rr.reduced.block(0, 0, r, b.cols()) != b) throw PreconditionError("restrict_module needs an rref basis");
    // coordinates in an rref basis are read off at the pivot columns
    auto restrict_action = [&](const Mat& a) {
        const Mat images = (a * b.transpose()).transpose();  // row j = a b_j
        if (!subspace_contains(b, images)) throw PreconditionError("subspace is not action-stable");
        return images.select_cols(rr.pivots).transpose();
    };
    return QMod(restrict_action(m.x()), restrict_action(m.y()));
}

QMod Submodule::module() const { return restrict_module(ambient, basis); }

ModMap Submodule::inclusion() const { return ModMap(module(), ambient, basis.transpose()); }

Mat action_closure(const QMod& m, const Mat& generators) {
    Mat span = row_space(generators);
    for (;;) {
        const Mat moved =
            Mat::vstack(span * m.x().transpose(), span * m.y().transpose());
        Mat grown = subspace_sum(span, moved);
        if (grown.rows() == span.rows()) return span;
        span = std::move(grown);
    }
}

Submodule rad_n(const QMod& m, std::size_t n) {
    Mat s = Mat::identity(m.field(), m.dim());
    for (std::size_t i = 0; i < n && s.rows() > 0; ++i)
        s = row_space(Mat::vstack(s * m.x().transpose(), s * m.y().transpose()));
    return {m, s};
}

Submodule rad(const QMod& m) { return rad_n(m, 1); }

Submodule soc_n(const QMod& m, std::size_t n) {
    Mat s(m.field(), 0, m.dim());
    for (std::size_t i = 0; i < n; ++i) {
        Mat next = subspace_intersect(preimage(m.x(), s), preimage(m.y(), s));
        if (next.rows() == s.rows()) break;
        s = std::move(next);
    }
    return {m, s};
}

Submodule soc(const QMod& m) { return soc_n(m, 1); }

Quotient quotient(const QMod& m, const Mat& submodule_basis) {
    const Mat s = row_space(submodule_basis);
    const RrefResult rr = rref(s);
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0, p = 0; c < m.dim(); ++c) {
        if (p < rr.pivots.size() && rr.pivots[p] == c)
            ++p;
        else
            free_cols.push_back(c);
    }
    // projection: v -> v - sum v[p_i] s_i, then read the non-pivot coordinates
    Mat reduce = Mat::identity(m.field(), m.dim());
    for (std::size_t i = 0; i < s.rows(); ++i)
        for (std::size_t c = 0; c < m.dim(); ++c)
            reduce(c, rr.pivots[i]) = static_cast<Elem>(s(i, c) ^ (c == rr.pivots[i] ? 1 : 0));
    const Mat proj = reduce.select_rows(free_cols);
    const Mat section = Mat::identity(m.field(), m.dim()).select_cols(free_cols);
    return {QMod(proj * m.x() * section, proj * m.y() * section), proj};
}

QMod direct_sum(const QMod& a, const QMod& b) {
    const Field& f = a.field();
    const std::size_t n = a.dim() + b.dim();
    Mat x(f, n, n), y(f, n, n);
    x.set_block(0, 0, a.x());
    x.set_block(a.dim(), a.dim(), b.x());
    y.set_block(0, 0, a.y());
    y.set_block(a.dim(), a.dim(), b.y());
    return QMod(x, y);
}

std::vector<ModMap> hom_space(const QMod& m, const QMod& n) {
    const Field& f = m.field();
    if (n.field() != f) throw ShapeError("hom_space: modules over different fields");
    const std::size_t dm = m.dim(), dn = n.dim();
    std::vector<ModMap> out;
    if (dm == 0 || dn == 0) return out;
    // vec row-major: F A - B F  ->  (I (x) A^T - B (x) I) vec F
    const Mat im = Mat::identity(f, dm), in = Mat::identity(f, dn);
    const Mat sys = Mat::vstack(Mat::kron(in, m.x().transpose()) + Mat::kron(n.x(), im),
                                Mat::kron(in, m.y().transpose()) + Mat::kron(n.y(), im));
    const Mat ker = kernel(sys);
    out.reserve(ker.rows());
    for (std::size_t i = 0; i < ker.rows(); ++i) {
        const auto r = ker.row(i);
        out.emplace_back(m, n, Mat(f, dn, dm, std::vector<Elem>(r.begin(), r.end())));
    }
    return out;
}

std::size_t free_rank(const QMod& m) { return rank(m.basis_word(dade::kXYXY)); }

bool is_projective_free(const QMod& m) { return m.basis_word(dade::kXYXY).is_zero(); }

Mat frobenius_hom(const QMod& m, const Mat& functional) {
    if (functional.rows() != 1 || functional.cols() != m.dim())
        throw ShapeError("frobenius_hom: functional must be a 1 x dim row");
    const Field& f = m.field();
    Mat lambda_w(f, kDadeDim, m.dim());
    for (std::size_t w = 0; w < kDadeDim; ++w) lambda_w.set_block(w, 0, functional * m.basis_word(w));
    return frobenius_dual_basis(f) * lambda_w;
}

namespace {

// Rows (word * r + k) of the map M -> R^r whose k-th component is the
// Frobenius map of functional row k.
Mat stacked_frobenius(const QMod& m, const Mat& functionals) {
    const std::size_t r = functionals.rows();
    Mat out(m.field(), kDadeDim * r, m.dim());
    for (std::size_t k = 0; k < r; ++k) {
        const Mat phi = frobenius_hom(m, functionals.block(k, 0, 1, m.dim()));
        for (std::size_t w = 0; w < kDadeDim; ++w) out.set_block(w * r + k, 0, phi.block(w, 0, 1, m.dim()));
    }
    return out;
}

// Functionals dual to the given independent vectors (rows): lambda * v^T = I.
Mat dual_functionals(const Mat& vectors) {
    auto sol = solve(vectors, Mat::identity(vectors.field(), vectors.rows()));
    if (!sol) throw InvariantError("dual functionals: vectors are dependent");
    return sol->transpose();
}

}  // namespace

StripResult strip_projectives(const QMod& m) {
    const Field& f = m.field();
    const std::size_t d = m.dim();
    const Mat top = m.basis_word(dade::kXYXY);
    const RrefResult rr = rref(top);
    const std::size_t r = rr.rank;
    if (r == 0) {
        const Mat id = Mat::identity(f, d);
        return {m, 0, Mat(f, d, 0), Mat(f, 0, d), id, id};
    }
    // generators m_i = e_{p_i}: their xyxy-images are independent
    const Mat gens = Mat::identity(f, d).select_rows(rr.pivots);
    Mat incl_free(f, d, kDadeDim * r);
    for (std::size_t w = 0; w < kDadeDim; ++w) {
        const Mat cols = m.basis_word(w) * gens.transpose();
        for (std::size_t i = 0; i < r; ++i) incl_free.set_block(0, w * r + i, cols.block(0, i, d, 1));
    }
    const Mat lambda = dual_functionals((top * gens.transpose()).transpose());
    const Mat rho_prime = stacked_frobenius(m, lambda);
    auto a_inv = inverse(rho_prime * incl_free);
    if (!a_inv) throw InvariantError("strip_projectives: free part does not split");
    const Mat proj_free = *a_inv * rho_prime;
    const Mat c = row_space(kernel(proj_free));
    const RrefResult cr = rref(c);
    const Mat incl_pf = c.transpose();
    const Mat proj_pf = (Mat::identity(f, d) + incl_free * proj_free).select_rows(cr.pivots);
    return {restrict_module(m, c), r, incl_free, proj_free, incl_pf, proj_pf};
}

Embedding injective_hull(const QMod& m) {
    const Field& f = m.field();
    const Mat s = soc(m).basis;
    const std::size_t t = s.rows();
    const QMod target = free_module(f, t);
    if (t == 0) return {0, ModMap::zero(m, target)};
    const Mat iota = stacked_frobenius(m, dual_functionals(s));
    ModMap map(m, target, iota);
    if (rank(iota) != m.dim()) throw InvariantError("injective_hull: map is not injective");
    return {t, std::move(map)};
}

Embedding injective_embedding(const QMod& m) {
    if (!is_projective_free(m))
        throw PreconditionError("injective_embedding requires a projective-free module");
    return injective_hull(m);
}

QMod base_change(const QMod& m, const FieldEmbedding& e) {
    if (m.dim() == 0) return QMod(e.target());
    return QMod(base_change(m.x(), e), base_change(m.y(), e));
}

ModMap base_change(const ModMap& f, const FieldEmbedding& e) {
    return ModMap(base_change(f.source(), e), base_change(f.target(), e), base_change(f.matrix(), e));
}

IsoResult find_isomorphism(const QMod& m, const QMod& n, std::uint64_t seed) {
    using S = IsoResult::Status;
    if (m.field() != n.field() || m.dim() != n.dim()) return {S::NotIsomorphic, std::nullopt};
    if (m.dim() == 0) return {S::Found, ModMap::identity(m)};
    const auto basis = hom_space(m, n);
    if (basis.empty()) return {S::NotIsomorphic, std::nullopt};
    const Field& f = m.field();
    auto combine = [&](const std::vector<Elem>& c) {
        Mat acc(f, n.dim(), m.dim());
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (c[i]) acc = acc + basis[i].matrix().scaled(c[i]);
        return acc;
    };
    Rng rng(seed);
    std::vector<Elem> c(basis.size());
    for (int trial = 0; trial < 64; ++trial) {
        for (auto& v : c) v = rng.element(f);
        Mat cand = combine(c);
        if (rank(cand) == m.dim()) return {S::Found, ModMap(m, n, std::move(cand))};
    }
    if (basis.size() > 3) return {S::Undecided, std::nullopt};
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < basis.size(); ++i) total *= f.order();
    for (std::uint64_t code = 1; code < total; ++code) {
        std::uint64_t rest = code;
        for (auto& v : c) {
            v = static_cast<Elem>(rest % f.order());
            rest /= f.order();
        }
        Mat cand = combine(c);
        if (rank(cand) == m.dim()) return {S::Found, ModMap(m, n, std::move(cand))};
    }
    return {S::NotIsomorphic, std::nullopt};
}

}  // namespace qghost
