#include <gtest/gtest.h>

#include <array>

#include "qghost/error.hpp"
#include "qghost/stable.hpp"

using namespace qghost;

namespace {

// Omega by hand: the kernel of R^g -> M sending the free generators to a
// K-basis of a complement of rad M.
QMod naive_syzygy(const QMod& m) {
    const Field& f = m.field();
    const Mat tops = standard_complement(rad(m).basis);
    const std::size_t g = tops.rows();
    const QMod free = free_module(f, g);
    Mat cover(f, m.dim(), free.dim());
    for (std::size_t w = 0; w < kDadeDim; ++w) {
        const Mat act_w = m.basis_word(w);
        for (std::size_t k = 0; k < g; ++k) {
            const auto col = act_w.apply(tops.row(k));
            for (std::size_t r = 0; r < m.dim(); ++r) cover(r, w * g + k) = col[r];
        }
    }
    return restrict_module(free, row_space(kernel(cover)));
}

}  // namespace

TEST(Syzygy, DimensionsOfTheTrivialModule) {
    for (unsigned k : {1u, 2u}) {
        const Field f = Field::make(k);
        QMod m = trivial_module(f);
        std::array<std::size_t, 5> dims{};
        for (std::size_t n = 0; n < 5; ++n) {
            dims[n] = m.dim();
            const Syzygy s = syzygy(m);
            EXPECT_EQ(s.omega.dim(), naive_syzygy(m).dim());
            EXPECT_TRUE(s.cover.is_homomorphism());
            EXPECT_TRUE(s.inclusion.is_homomorphism());
            EXPECT_TRUE(compose(s.cover, s.inclusion).is_zero());
            m = s.omega;
        }
        EXPECT_EQ(dims, (std::array<std::size_t, 5>{1, 7, 9, 7, 1}));
    }
}

TEST(Syzygy, ResolutionIsAComplex) {
    const Field f = Field::gf2();
    const Resolution r = minimal_resolution(f, 4);
    ASSERT_GE(r.boundaries.size(), 3u);
    EXPECT_TRUE((r.augmentation * r.boundaries[0]).is_zero());
    for (std::size_t i = 0; i + 1 < r.boundaries.size(); ++i) EXPECT_TRUE((r.boundaries[i] * r.boundaries[i + 1]).is_zero());
    EXPECT_EQ(r.ranks[0], 1u);
    EXPECT_EQ(r.ranks[1], 2u);
}

TEST(Syzygy, PeriodFour) {
    for (unsigned k : {1u, 2u}) {
        const PeriodicityCertificate c = verify_periodicity(Field::make(k));
        EXPECT_EQ(c.dims, (std::array<std::size_t, 5>{1, 7, 9, 7, 1}));
        EXPECT_EQ(c.cover_ranks, (std::array<std::size_t, 4>{1, 2, 2, 1}));
        EXPECT_TRUE(c.iso.is_homomorphism());
        EXPECT_TRUE(inverse(c.iso.matrix()).has_value());
    }
}

TEST(StableTriviality, MapsThroughFreeModulesAreTrivial) {
    Rng rng(31);
    const Field f = Field::gf2();
    for (int t = 0; t < 20; ++t) {
        const QMod m = random_module(f, rng, 12), n = random_module(f, rng, 12);
        const auto a = hom_space(m, regular_module(f));
        const auto b = hom_space(regular_module(f), n);
        if (a.empty() || b.empty()) continue;
        const ModMap h = compose(b[rng.below(b.size())], a[rng.below(a.size())]);
        EXPECT_TRUE(stably_trivial(h));
        EXPECT_TRUE(stably_trivial_via_cover(h));
        const auto w = stably_trivial_witness(h);
        ASSERT_TRUE(w.has_value());
        EXPECT_EQ(compose(w->factor, w->hull.iota).matrix(), h.matrix());
    }
}

TEST(StableTriviality, IdentityOfANonProjectiveIsNotTrivial) {
    const Field f = Field::gf2();
    EXPECT_FALSE(stably_trivial(ModMap::identity(trivial_module(f))));
    EXPECT_FALSE(stably_trivial_via_cover(ModMap::identity(trivial_module(f))));
    EXPECT_TRUE(stably_trivial(ModMap::identity(regular_module(f))));
}

TEST(StableTriviality, BothTestsAgreeOnRandomMaps) {
    Rng rng(32);
    for (unsigned k : {1u, 2u}) {
        const Field f = Field::make(k);
        for (int t = 0; t < 25; ++t) {
            const QMod m = random_module(f, rng, 10), n = random_module(f, rng, 10);
            const auto hs = hom_space(m, n);
            if (hs.empty()) continue;
            Mat acc(f, n.dim(), m.dim());
            for (const auto& h : hs)
                if (rng.below(2)) acc = acc + h.matrix().scaled(rng.nonzero_element(f));
            const ModMap h(m, n, acc);
            EXPECT_EQ(stably_trivial(h), stably_trivial_via_cover(h));
        }
    }
}

TEST(StableTriviality, DescentFromF4) {
    Rng rng(33);
    const Field f2 = Field::gf2(), f4 = Field::f4();
    const FieldEmbedding e = field_embed(f2, f4);
    for (int t = 0; t < 10; ++t) {
        const QMod m = random_module(f2, rng, 10);
        const auto a = hom_space(m, regular_module(f2));
        if (a.empty()) continue;
        const ModMap h = compose(ModMap::identity(regular_module(f2)), a[0]);
        const Embedding hull = injective_hull(m);
        const Embedding hull4{hull.v_dim, base_change(hull.iota, e)};
        const auto ext = factor_through(base_change(h, e), hull4);
        ASSERT_TRUE(ext.has_value());
        const auto w = descend_witness(h, hull, *ext, e);
        ASSERT_TRUE(w.has_value());
        EXPECT_EQ(w->factor.field(), f2);
        EXPECT_EQ(compose(w->factor, w->hull.iota).matrix(), h.matrix());
    }
}

TEST(Ghosts, GhostSpaceElementsAreGhosts) {
    Rng rng(34);
    const Field f = Field::gf2();
    for (int t = 0; t < 15; ++t) {
        const QMod m = random_module(f, rng, 10), n = random_module(f, rng, 10);
        const GhostSpace g = ghost_space(m, n);
        for (const auto& b : g.basis) {
            EXPECT_TRUE(b.is_homomorphism());
            EXPECT_TRUE(is_ghost(b));
        }
        if (!g.basis.empty()) {
            EXPECT_TRUE(is_ghost(sample_ghost(g, rng.next())));
        }
    }
}

TEST(Ghosts, IdentityOfKIsNotAGhost) {
    const Field f = Field::gf2();
    EXPECT_FALSE(is_ghost(ModMap::identity(trivial_module(f))));
    const GhostSpace g = ghost_space(trivial_module(f), trivial_module(f));
    EXPECT_TRUE(g.basis.empty());
    EXPECT_THROW(sample_ghost(g, 1), PreconditionError);
}

TEST(Ghosts, UniversalGhostIsAGhost) {
    Rng rng(35);
    const Field f = Field::gf2();
    for (int t = 0; t < 6; ++t) {
        const QMod m = random_module(f, rng, 10);
        const UniversalGhost u = universal_ghost(m);
        EXPECT_TRUE(u.ghost.is_homomorphism());
        EXPECT_TRUE(is_ghost(u.ghost));
        EXPECT_TRUE(is_projective_free(u.target));
        // every Tate generator dies under the universal ghost
        const TateGenerators gens = tate_generators(m);
        for (const auto& h : gens.maps) EXPECT_TRUE(stably_trivial(compose(u.ghost, h)));
    }
}

TEST(Ghosts, DoubleGhostWitnessIsRejectedWhenComposed) {
    const Field f = Field::gf2();
    LowerBoundConfig cfg;
    cfg.pool = default_pool(f);
    cfg.seed = 1;
    cfg.budget = std::chrono::milliseconds(60000);
    const LowerBoundResult r = lower_bound_search(cfg);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_TRUE(verify_double_ghost(*r.witness));
    DoubleGhostWitness bad = *r.witness;
    bad.g2 = ModMap::zero(bad.m1, bad.m2);
    EXPECT_FALSE(verify_double_ghost(bad));
}

TEST(Ghosts, SingleGhostsOnPowersOfTheRadical) {
    for (unsigned k : {1u, 2u}) {
        const QMod r = regular_module(Field::make(k));
        // J = Omega K: stable End is the field, and the identity is not a ghost
        for (const auto& g : ghost_space(rad_n(r, 1).module(), rad_n(r, 1).module()).basis) EXPECT_TRUE(stably_trivial(g));
        std::size_t nontrivial = 0;
        for (const auto& g : ghost_space(rad_n(r, 2).module(), rad_n(r, 2).module()).basis) nontrivial += !stably_trivial(g);
        EXPECT_GT(nontrivial, 0u);
    }
}
