#include <gtest/gtest.h>

#include <set>

#include "qghost/error.hpp"
#include "qghost/matrix.hpp"
#include "qghost/poly.hpp"
#include "qghost/rng.hpp"

using namespace qghost;

namespace {

// Schoolbook carry-less product reduced by the modulus.
std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b, std::uint32_t modulus, unsigned k) {
    std::uint32_t acc = 0;
    for (unsigned i = 0; i < k; ++i)
        if (b >> i & 1) acc ^= a << i;
    for (int bit = 2 * static_cast<int>(k) - 2; bit >= static_cast<int>(k); --bit)
        if (acc >> bit & 1) acc ^= modulus << (bit - static_cast<int>(k));
    return acc;
}

Mat random_mat(const Field& f, std::size_t r, std::size_t c, Rng& rng) {
    Mat m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.element(f);
    return m;
}

// Rank over GF(2) by counting the distinct vectors in the row span.
std::size_t brute_rank_gf2(const Mat& m) {
    std::set<std::vector<Elem>> span;
    for (std::uint32_t mask = 0; mask < (1u << m.rows()); ++mask) {
        std::vector<Elem> v(m.cols(), 0);
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (mask >> i & 1)
                for (std::size_t j = 0; j < m.cols(); ++j) v[j] ^= m(i, j);
        span.insert(v);
    }
    std::size_t r = 0;
    while ((std::size_t{1} << r) < span.size()) ++r;
    return r;
}

// Irreducibility over GF(2) by trial division with every lower-degree polynomial.
bool brute_irreducible_gf2(std::uint32_t p) {
    int deg = 31;
    while (deg >= 0 && !(p >> deg & 1)) --deg;
    if (deg < 1) return false;
    for (std::uint32_t d = 2; d < (1u << deg); ++d) {
        int dd = 31;
        while (!(d >> dd & 1)) --dd;
        if (dd == 0 || dd >= deg) continue;
        std::uint32_t r = p;
        for (int bit = deg; bit >= dd; --bit)
            if (r >> bit & 1) r ^= d << (bit - dd);
        if (r == 0) return false;
    }
    return true;
}

}  // namespace

TEST(Field, MultiplicationMatchesSchoolbookProduct) {
    for (unsigned k : {1u, 2u, 3u, 4u, 5u}) {
        const Field f = Field::make(k);
        for (std::uint32_t a = 0; a < f.order(); ++a)
            for (std::uint32_t b = 0; b < f.order(); ++b)
                ASSERT_EQ(f.mul(static_cast<Elem>(a), static_cast<Elem>(b)), slow_mul(a, b, f.modulus(), k));
    }
    Rng rng(17);
    for (unsigned k : {8u, 12u, 16u}) {
        const Field f = Field::make(k);
        for (int t = 0; t < 2000; ++t) {
            const Elem a = rng.element(f), b = rng.element(f);
            ASSERT_EQ(f.mul(a, b), slow_mul(a, b, f.modulus(), k));
        }
    }
}

TEST(Field, DefaultModuliAreIrreducibleOfTheRightDegree) {
    for (unsigned k = 1; k <= Field::kMaxDegree; ++k) {
        const std::uint32_t m = Field::default_modulus(k);
        EXPECT_EQ(m >> k, 1u);
        EXPECT_TRUE(gf2_poly_irreducible(m));
        if (k <= 10) EXPECT_TRUE(brute_irreducible_gf2(m));
    }
    EXPECT_EQ(Field::default_modulus(2), 0x7u);
    EXPECT_EQ(Field::default_modulus(8), 0x11du);
}

TEST(Field, InversesAndInterning) {
    const Field f = Field::make(8);
    for (std::uint32_t a = 1; a < f.order(); ++a) EXPECT_EQ(f.mul(static_cast<Elem>(a), f.inv(static_cast<Elem>(a))), 1);
    EXPECT_THROW(f.inv(0), PreconditionError);
    EXPECT_EQ(Field::make(8), f);
    EXPECT_NE(Field::make(4), f);
    EXPECT_THROW(Field::make(4, 0x15), PreconditionError);  // X^4 + X^2 + 1 = (X^2 + X + 1)^2
}

TEST(Field, EmbeddingIsAHomomorphismWithARetraction) {
    const Field f4 = Field::f4(), f16 = Field::make(4);
    const FieldEmbedding e = field_embed(f4, f16);
    for (Elem a = 0; a < 4; ++a) {
        EXPECT_EQ(e.retract(e(a)), a);
        for (Elem b = 0; b < 4; ++b) {
            EXPECT_EQ(e(f4.mul(a, b)), f16.mul(e(a), e(b)));
            EXPECT_EQ(e(f4.add(a, b)), f16.add(e(a), e(b)));
        }
    }
    // the retraction is additive and fixes the image
    for (Elem a = 0; a < 16; ++a)
        for (Elem b = 0; b < 16; ++b) EXPECT_EQ(e.retract(f16.add(a, b)), f4.add(e.retract(a), e.retract(b)));
    EXPECT_THROW(field_embed(f4, Field::make(3)), PreconditionError);
}

TEST(Matrix, RankMatchesRowSpanCount) {
    Rng rng(5);
    const Field f = Field::gf2();
    for (int t = 0; t < 200; ++t) {
        const Mat m = random_mat(f, rng.between(1, 9), rng.between(1, 12), rng);
        ASSERT_EQ(rank(m), brute_rank_gf2(m));
    }
}

TEST(Matrix, RankNullityAndKernel) {
    Rng rng(6);
    for (unsigned k : {1u, 2u, 4u, 8u}) {
        const Field f = Field::make(k);
        for (int t = 0; t < 60; ++t) {
            const std::size_t r = rng.between(1, 10), c = rng.between(1, 10);
            Mat m = random_mat(f, r, c, rng);
            if (t % 3 == 0 && r > 1) m.set_block(r - 1, 0, m.block(0, 0, 1, c));  // force a dependency
            const Mat ker = kernel(m);
            EXPECT_EQ(rank(m) + ker.rows(), c);
            if (ker.rows()) {
                EXPECT_TRUE((m * ker.transpose()).is_zero());
            }
            EXPECT_EQ(rank(ker), ker.rows());
        }
    }
}

TEST(Matrix, InverseSolveAndDeterminant) {
    Rng rng(7);
    for (unsigned k : {1u, 2u, 3u, 8u}) {
        const Field f = Field::make(k);
        for (int t = 0; t < 60; ++t) {
            const std::size_t n = rng.between(1, 8);
            const Mat a = random_mat(f, n, n, rng), b = random_mat(f, n, n, rng);
            EXPECT_EQ(determinant(a * b), f.mul(determinant(a), determinant(b)));
            const auto inv = inverse(a);
            EXPECT_EQ(inv.has_value(), determinant(a) != 0);
            EXPECT_EQ(inv.has_value(), rank(a) == n);
            if (inv) {
                EXPECT_EQ(a * *inv, Mat::identity(f, n));
                EXPECT_EQ(*inv * a, Mat::identity(f, n));
            }
            // consistent system: rhs built from a known solution
            const Mat x = random_mat(f, n, 2, rng);
            const auto sol = solve(a, a * x);
            ASSERT_TRUE(sol.has_value());
            EXPECT_EQ(a * *sol, a * x);
        }
    }
}

TEST(Matrix, InconsistentSystemHasNoSolution) {
    const Field f = Field::gf2();
    const Mat a = Mat::from_rows(f, {{1, 1}, {1, 1}});
    const Mat b = Mat::from_rows(f, {{1}, {0}});
    EXPECT_FALSE(solve(a, b).has_value());
}

TEST(Matrix, SubspaceDimensionFormula) {
    Rng rng(8);
    const Field f = Field::f4();
    for (int t = 0; t < 80; ++t) {
        const std::size_t n = rng.between(2, 9);
        const Mat u = row_space(random_mat(f, rng.between(0, n), n, rng));
        const Mat w = row_space(random_mat(f, rng.between(0, n), n, rng));
        const Mat sum = subspace_sum(u, w), cap = subspace_intersect(u, w);
        EXPECT_EQ(sum.rows() + cap.rows(), u.rows() + w.rows());
        EXPECT_TRUE(subspace_contains(u, cap));
        EXPECT_TRUE(subspace_contains(w, cap));
        EXPECT_TRUE(subspace_contains(sum, u));
        const Mat c = standard_complement(u);
        EXPECT_EQ(rank(Mat::vstack(u, c)), n);
        EXPECT_EQ(annihilator(u).rows(), n - u.rows());
    }
}

TEST(Matrix, PreimageAndCoordinates) {
    Rng rng(9);
    const Field f = Field::make(3);
    for (int t = 0; t < 50; ++t) {
        const Mat a = random_mat(f, 5, 6, rng);
        const Mat s = row_space(random_mat(f, 2, 5, rng));
        const Mat pre = preimage(a, s);
        if (pre.rows()) {
            EXPECT_TRUE(subspace_contains(s, (a * pre.transpose()).transpose()));
        }
        EXPECT_TRUE(subspace_contains(pre, kernel(a)));
        const Mat b = row_space(random_mat(f, 3, 6, rng));
        const Mat c = random_mat(f, 4, b.rows(), rng);
        EXPECT_EQ(coordinates(b, c * b), c);
    }
}

TEST(Matrix, KroneckerProductVecIdentity) {
    // row-major vec(A X B) = (A (x) B^T) vec(X)
    Rng rng(10);
    const Field f = Field::f4();
    const Mat a = random_mat(f, 3, 2, rng), x = random_mat(f, 2, 4, rng), b = random_mat(f, 4, 3, rng);
    const Mat lhs = a * x * b;
    std::vector<Elem> flat;
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) flat.push_back(x(i, j));
    const Mat rhs = Mat::kron(a, b.transpose()) * Mat(f, 8, 1, flat);
    for (std::size_t i = 0; i < lhs.rows(); ++i)
        for (std::size_t j = 0; j < lhs.cols(); ++j) EXPECT_EQ(lhs(i, j), rhs(i * lhs.cols() + j, 0));
}

TEST(Matrix, BaseChangeAndRetractRoundTrip) {
    Rng rng(11);
    const Field f2 = Field::gf2(), f4 = Field::f4();
    const FieldEmbedding e = field_embed(f2, f4);
    const Mat a = random_mat(f2, 4, 5, rng);
    EXPECT_EQ(retract(base_change(a, e), e), a);
    EXPECT_EQ(rank(base_change(a, e)), rank(a));
}

TEST(Poly, GF2IrreducibilityMatchesTrialDivision) {
    for (std::uint32_t p = 2; p < 1024; ++p) ASSERT_EQ(gf2_poly_irreducible(p), brute_irreducible_gf2(p)) << p;
    const Field f = Field::gf2();
    for (std::uint32_t p = 2; p < 256; ++p)
        ASSERT_EQ(is_irreducible(Poly::from_gf2_mask(f, p)), brute_irreducible_gf2(p)) << p;
}

TEST(Poly, FactorizationReconstructsAndFactorsAreIrreducible) {
    Rng rng(12);
    for (unsigned k : {1u, 2u, 3u}) {
        const Field f = Field::make(k);
        for (int t = 0; t < 80; ++t) {
            std::vector<Elem> c(rng.between(2, 9));
            for (auto& v : c) v = rng.element(f);
            c.back() = 1;
            const Poly p(f, c);
            Poly prod = Poly::constant(f, 1);
            for (const auto& pf : poly_factor(p)) {
                EXPECT_TRUE(pf.factor.is_monic());
                EXPECT_TRUE(is_irreducible(pf.factor));
                prod = prod * pf.factor.pow(pf.multiplicity);
            }
            EXPECT_EQ(prod, p);
        }
    }
    EXPECT_THROW(poly_factor(Poly(Field::gf2())), PreconditionError);
}

TEST(Poly, RootsAreRoots) {
    const Field f = Field::make(4);
    Rng rng(13);
    for (int t = 0; t < 40; ++t) {
        std::vector<Elem> c(5);
        for (auto& v : c) v = rng.element(f);
        c.back() = 1;
        const Poly p(f, c);
        const auto roots = poly_roots(p);
        std::size_t count = 0;
        for (std::uint32_t a = 0; a < f.order(); ++a)
            if (p.eval(static_cast<Elem>(a)) == 0) ++count;
        EXPECT_EQ(roots.size(), count);
        for (Elem r : roots) EXPECT_EQ(p.eval(r), 0);
    }
}

TEST(Poly, CharPolyCayleyHamiltonAndCompanion) {
    Rng rng(14);
    for (unsigned k : {1u, 2u, 4u}) {
        const Field f = Field::make(k);
        for (int t = 0; t < 40; ++t) {
            const std::size_t n = rng.between(1, 7);
            const Mat a = random_mat(f, n, n, rng);
            const Poly cp = char_poly(a);
            EXPECT_EQ(cp.degree(), static_cast<int>(n));
            EXPECT_TRUE(cp.is_monic());
            EXPECT_TRUE(cp.eval(a).is_zero());
            EXPECT_EQ(cp.coeff(0), determinant(a));  // det(-A) = det(A) in characteristic two
            EXPECT_EQ(char_poly(companion(cp)), cp);
        }
    }
}
