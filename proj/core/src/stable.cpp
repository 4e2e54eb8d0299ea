#include "qghost/stable.hpp"

#include <map>
#include <mutex>

#include "qghost/error.hpp"

namespace qghost {

namespace {

Mat vec_column(const Mat& m) {
    return Mat(m.field(), m.rows() * m.cols(), 1, m.entries());
}

// Columns: vec of each map (all maps share one shape).
Mat vec_columns(const std::vector<Mat>& maps, const Field& f, std::size_t len) {
    Mat out(f, len, maps.size());
    for (std::size_t j = 0; j < maps.size(); ++j) {
        const auto& e = maps[j].entries();
        for (std::size_t i = 0; i < len; ++i) out(i, j) = e[i];
    }
    return out;
}

// Matrix of the R-linear map R^g -> M sending 1 (x) e_i to column i of gens.
Mat free_map(const QMod& m, const Mat& gens) {
    const std::size_t g = gens.cols();
    Mat out(m.field(), m.dim(), kDadeDim * g);
    for (std::size_t w = 0; w < kDadeDim; ++w) out.set_block(0, w * g, m.basis_word(w) * gens);
    return out;
}

}  // namespace

Syzygy syzygy(const QMod& m) {
    const Field& f = m.field();
    const Mat top = standard_complement(rad(m).basis);
    const std::size_t g = top.rows();
    const QMod free = free_module(f, g);
    const Mat cover = free_map(m, top.transpose());
    const Mat ker = row_space(kernel(cover));
    if (!subspace_contains(rad(free).basis, ker)) throw InvariantError("syzygy: cover is not minimal");
    QMod omega = restrict_module(free, ker);
    return {omega, g, ModMap(free, m, cover), ModMap(omega, free, ker.transpose())};
}

Resolution minimal_resolution(const Field& f, std::size_t length) {
    Resolution res{{}, {}, Mat(f, 0, 0)};
    QMod cur = trivial_module(f);
    Mat prev_inclusion(f, 0, 0);
    for (std::size_t i = 0; i <= length; ++i) {
        Syzygy s = syzygy(cur);
        res.ranks.push_back(s.cover_rank);
        if (i == 0)
            res.augmentation = s.cover.matrix();
        else
            res.boundaries.push_back(prev_inclusion * s.cover.matrix());
        prev_inclusion = s.inclusion.matrix();
        cur = s.omega;
        if (cur.dim() == 0) break;
    }
    return res;
}

PeriodicityCertificate verify_periodicity(const Field& f) {
    std::vector<QMod> omegas{trivial_module(f)};
    std::array<std::size_t, 4> ranks{};
    for (std::size_t n = 0; n < 4; ++n) {
        Syzygy s = syzygy(omegas.back());
        ranks[n] = s.cover_rank;
        omegas.push_back(s.omega);
    }
    std::array<std::size_t, 5> dims{};
    for (std::size_t n = 0; n < 5; ++n) dims[n] = omegas[n].dim();
    IsoResult iso = find_isomorphism(omegas[4], omegas[0], 0x4f6d656761ULL);
    if (iso.status != IsoResult::Status::Found)
        throw InvariantError("periodicity: Omega^4 K is not isomorphic to K over " + f.name());
    return {dims, ranks, *iso.iso};
}

TateContext::TateContext(const Field& f) : cert_(verify_periodicity(f)) {
    QMod cur = trivial_module(f);
    for (std::size_t n = 0; n < 4; ++n) {
        omega_.push_back(cur);
        hull_.push_back(injective_hull(cur));
        cur = syzygy(cur).omega;
    }
}

std::shared_ptr<const TateContext> TateContext::get(const Field& f) {
    static std::mutex mu;
    static std::map<std::string, std::shared_ptr<const TateContext>> cache;
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(f.header()); it != cache.end()) return it->second;
    }
    auto ctx = std::make_shared<const TateContext>(f);
    std::lock_guard lock(mu);
    return cache.try_emplace(f.header(), std::move(ctx)).first->second;
}

Mat factoring_system(const Embedding& hull, const QMod& target) {
    const Field& f = target.field();
    const std::size_t s = hull.v_dim;
    const std::size_t dm = hull.iota.source().dim();
    const std::size_t dn = target.dim();
    const Mat& iota = hull.iota.matrix();
    Mat sys(f, dn * dm, s * dn);
    for (std::size_t w = 0; w < kDadeDim; ++w) {
        const Mat wn = target.basis_word(w);
        for (std::size_t k = 0; k < s; ++k)
            for (std::size_t c = 0; c < dm; ++c) {
                const Elem alpha = iota(w * s + k, c);
                if (!alpha) continue;
                for (std::size_t r = 0; r < dn; ++r)
                    for (std::size_t b = 0; b < dn; ++b)
                        if (Elem v = wn(r, b))
                            sys(r * dm + c, k * dn + b) ^= f.mul(alpha, v);
            }
    }
    return sys;
}

std::optional<ModMap> factor_through(const ModMap& f, const Embedding& hull) {
    if (hull.iota.source() != f.source()) throw ShapeError("factor_through: hull of a different module");
    const QMod& n = f.target();
    const std::size_t s = hull.v_dim, dn = n.dim();
    const QMod free = free_module(f.field(), s);
    if (dn == 0 || f.source().dim() == 0) return ModMap::zero(free, n);
    auto sol = solve(factoring_system(hull, n), vec_column(f.matrix()));
    if (!sol) return std::nullopt;
    Mat gens(f.field(), dn, s);
    for (std::size_t k = 0; k < s; ++k)
        for (std::size_t b = 0; b < dn; ++b) gens(b, k) = (*sol)(k * dn + b, 0);
    return ModMap(free, n, free_map(n, gens));
}

std::optional<StableWitness> stably_trivial_witness(const ModMap& f) {
    Embedding hull = injective_hull(f.source());
    auto h = factor_through(f, hull);
    if (!h) return std::nullopt;
    return StableWitness{std::move(hull), std::move(*h)};
}

bool stably_trivial(const ModMap& f) { return stably_trivial_witness(f).has_value(); }

bool stably_trivial_via_cover(const ModMap& f) {
    const QMod& m = f.source();
    const QMod& n = f.target();
    if (f.is_zero()) return true;
    const Syzygy s = syzygy(n);
    const std::size_t g = s.cover_rank, dm = m.dim(), dn = n.dim();
    // Hom(M, R) = M* by Frobenius duality; place each in component k of R^g.
    std::vector<Mat> lifts;
    for (std::size_t i = 0; i < dm; ++i) {
        Mat unit(f.field(), 1, dm);
        unit(0, i) = 1;
        const Mat phi = frobenius_hom(m, unit);
        for (std::size_t k = 0; k < g; ++k) {
            Mat h(f.field(), kDadeDim * g, dm);
            for (std::size_t w = 0; w < kDadeDim; ++w) h.set_block(w * g + k, 0, phi.block(w, 0, 1, dm));
            lifts.push_back(s.cover.matrix() * h);
        }
    }
    const Mat sys = vec_columns(lifts, f.field(), dn * dm);
    return solve(sys, vec_column(f.matrix())).has_value();
}

std::optional<StableWitness> descend_witness(const ModMap& f, const Embedding& base_hull,
                                             const ModMap& factor_ext, const FieldEmbedding& e) {
    const Mat h = retract(factor_ext.matrix(), e);
    if (!(h * base_hull.iota.matrix() == f.matrix())) return std::nullopt;
    ModMap factor(base_hull.iota.target(), f.target(), h);
    if (!factor.is_homomorphism()) return std::nullopt;
    return StableWitness{base_hull, std::move(factor)};
}

bool is_ghost(const ModMap& f) {
    const QMod& m = f.source();
    const QMod& n = f.target();
    if (m.dim() == 0 || n.dim() == 0 || f.is_zero()) return true;
    const auto ctx = TateContext::get(f.field());
    for (std::size_t deg = 0; deg < 4; ++deg) {
        const auto homs = hom_space(ctx->omega(deg), m);
        if (homs.empty()) continue;
        const Mat sys = factoring_system(ctx->hull(deg), n);
        std::vector<Mat> comps;
        for (const auto& h : homs) comps.push_back(f.matrix() * h.matrix());
        const Mat targets = vec_columns(comps, f.field(), sys.rows());
        if (rank(Mat::hstack(sys, targets)) != rank(sys)) return false;
    }
    return true;
}

GhostSpace ghost_space(const QMod& m, const QMod& n) {
    const Field& f = m.field();
    const auto homs = hom_space(m, n);
    GhostSpace out{m, n, {}};
    if (homs.empty()) return out;
    const auto ctx = TateContext::get(f);
    const std::size_t r = homs.size();
    Mat conditions(f, 0, r);
    for (std::size_t deg = 0; deg < 4; ++deg) {
        const auto tate = hom_space(ctx->omega(deg), m);
        if (tate.empty()) continue;
        const Mat sys = factoring_system(ctx->hull(deg), n);
        const Mat ann = annihilator(sys.transpose());
        if (ann.rows() == 0) continue;
        for (const auto& h : tate) {
            std::vector<Mat> comps;
            comps.reserve(r);
            for (const auto& fj : homs) comps.push_back(fj.matrix() * h.matrix());
            conditions = Mat::vstack(conditions, ann * vec_columns(comps, f, sys.rows()));
        }
        conditions = row_space(conditions);
    }
    const Mat coeffs = kernel(conditions);
    for (std::size_t i = 0; i < coeffs.rows(); ++i) {
        Mat acc(f, n.dim(), m.dim());
        for (std::size_t j = 0; j < r; ++j)
            if (Elem c = coeffs(i, j)) acc = acc + homs[j].matrix().scaled(c);
        out.basis.emplace_back(m, n, std::move(acc));
    }
    return out;
}

ModMap sample_ghost(const GhostSpace& g, std::uint64_t seed) {
    if (g.basis.empty()) throw PreconditionError("sample_ghost: ghost space is zero");
    Rng rng(seed);
    const Field& f = g.source.field();
    Mat acc(f, g.target.dim(), g.source.dim());
    for (const auto& b : g.basis)
        if (Elem c = rng.element(f)) acc = acc + b.matrix().scaled(c);
    return ModMap(g.source, g.target, std::move(acc));
}

TateGenerators tate_generators(const QMod& m) {
    TateGenerators out;
    if (m.dim() == 0) return out;
    const auto ctx = TateContext::get(m.field());
    for (std::size_t deg = 0; deg < 4; ++deg) {
        const auto homs = hom_space(ctx->omega(deg), m);
        if (homs.empty()) continue;
        Mat span = image(factoring_system(ctx->hull(deg), m));
        for (const auto& h : homs) {
            const Mat v = Mat::row_vector(m.field(), h.matrix().entries());
            if (subspace_contains(span, v)) continue;
            span = subspace_sum(span, v);
            out.degrees.push_back(deg);
            out.maps.push_back(h);
        }
    }
    return out;
}

UniversalGhost universal_ghost(const QMod& m) {
    const Field& f = m.field();
    const TateGenerators gens = tate_generators(m);
    if (gens.maps.empty()) {
        const QMod zero(f);
        return {zero, ModMap::zero(m, zero)};
    }
    QMod p(f);
    for (const auto& h : gens.maps) p = direct_sum(p, h.source());
    Mat phi(f, m.dim(), p.dim());
    for (std::size_t i = 0, col = 0; i < gens.maps.size(); ++i) {
        phi.set_block(0, col, gens.maps[i].matrix());
        col += gens.maps[i].source().dim();
    }
    const Embedding hull = injective_hull(p);
    // pushout (M (+) I) / {(phi p, iota p)}
    const QMod sum = direct_sum(m, hull.iota.target());
    const Mat relations = Mat::vstack(phi, hull.iota.matrix());
    const Quotient q = quotient(sum, relations.transpose());
    const Mat incl_m = Mat::identity(f, sum.dim()).block(0, 0, sum.dim(), m.dim());
    const Mat u = q.projection * incl_m;
    const StripResult st = strip_projectives(q.module);
    return {st.projective_free, ModMap(m, st.projective_free, st.proj_pf * u)};
}

QMod random_module(const Field& f, Rng& rng, std::size_t max_dim) {
    for (;;) {
        const std::size_t k = rng.between(1, 3);
        const QMod free = free_module(f, k);
        const std::size_t gens = rng.between(1, 2);
        Mat v(f, gens, free.dim());
        for (std::size_t i = 0; i < gens; ++i)
            for (std::size_t j = 0; j < free.dim(); ++j)
                // bias toward the radical so that proper submodules are common
                v(i, j) = (j < k && !rng.coin()) ? 0 : rng.element(f);
        const Mat span = action_closure(free, v);
        if (span.rows() == 0) continue;
        QMod sub = restrict_module(free, span);
        QMod pf = strip_projectives(sub).projective_free;
        if (pf.dim() == 0 || pf.dim() > max_dim) continue;
        return pf;
    }
}

bool verify_double_ghost(const DoubleGhostWitness& w) {
    if (w.g1.source() != w.m0 || w.g1.target() != w.m1) return false;
    if (w.g2.source() != w.m1 || w.g2.target() != w.m2) return false;
    if (!w.g1.is_homomorphism() || !w.g2.is_homomorphism()) return false;
    if (!is_ghost(w.g1) || !is_ghost(w.g2)) return false;
    return !stably_trivial(compose(w.g2, w.g1));
}

std::vector<QMod> default_pool(const Field& f) {
    std::vector<QMod> pool;
    QMod cur = trivial_module(f);
    for (std::size_t n = 0; n <= 4; ++n) {
        pool.push_back(cur);
        cur = syzygy(cur).omega;
    }
    const QMod r = regular_module(f);
    for (std::size_t i = 2; i <= 4; ++i) pool.push_back(quotient(r, rad_n(r, i).basis).module);
    for (std::size_t i = 1; i <= 4; ++i) pool.push_back(rad_n(r, i).module());
    return pool;
}

LowerBoundResult lower_bound_search(const LowerBoundConfig& cfg) {
    using clock = std::chrono::steady_clock;
    const auto deadline = clock::now() + cfg.budget;
    LowerBoundResult res;
    auto out_of_time = [&] {
        if (clock::now() < deadline) return false;
        res.budget_exhausted = true;
        return true;
    };
    auto accept = [&](DoubleGhostWitness w) {
        if (!verify_double_ghost(w)) return false;
        res.witness = std::move(w);
        return true;
    };

    std::vector<QMod> pool;
    for (const auto& m : cfg.pool) {
        QMod pf = strip_projectives(m).projective_free;
        if (pf.dim() > 0) pool.push_back(std::move(pf));
    }
    const std::size_t p = pool.size();

    // stage 1: basis pairs of ghost spaces over pool triples
    std::map<std::pair<std::size_t, std::size_t>, GhostSpace> spaces;
    auto space = [&](std::size_t i, std::size_t j) -> const GhostSpace& {
        auto it = spaces.find({i, j});
        if (it == spaces.end()) it = spaces.emplace(std::pair{i, j}, ghost_space(pool[i], pool[j])).first;
        return it->second;
    };
    for (std::size_t a = 0; a < p; ++a)
        for (std::size_t b = 0; b < p; ++b) {
            const GhostSpace& g1s = space(a, b);
            if (g1s.basis.empty()) continue;
            for (std::size_t c = 0; c < p; ++c) {
                if (out_of_time()) return res;
                const GhostSpace& g2s = space(b, c);
                for (const auto& g1 : g1s.basis)
                    for (const auto& g2 : g2s.basis) {
                        ++res.candidates;
                        if (stably_trivial(compose(g2, g1))) continue;
                        if (accept({pool[a], pool[b], pool[c], g1, g2, "pool ghost-space bases"})) return res;
                    }
            }
        }

    // stage 2 and 3: composites of two universal ghosts
    auto try_universal = [&](const QMod& m, const std::string& origin) {
        ++res.candidates;
        UniversalGhost u1 = universal_ghost(m);
        if (u1.target.dim() == 0) return false;
        UniversalGhost u2 = universal_ghost(u1.target);
        if (u2.target.dim() == 0) return false;
        if (stably_trivial(compose(u2.ghost, u1.ghost))) return false;
        return accept({m, u1.target, u2.target, u1.ghost, u2.ghost, origin});
    };
    for (const auto& m : pool) {
        if (out_of_time()) return res;
        if (try_universal(m, "universal ghosts of a pool module")) return res;
    }
    if (cfg.pool.empty()) return res;
    Rng rng = Rng::stream(cfg.seed, 0);
    for (std::size_t i = 0; i < cfg.random_candidates; ++i) {
        if (out_of_time()) return res;
        const QMod m = random_module(cfg.pool.front().field(), rng, cfg.random_max_dim);
        if (try_universal(m, "universal ghosts of a random module")) return res;
    }
    return res;
}

}  // namespace qghost
