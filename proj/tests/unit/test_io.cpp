#include <gtest/gtest.h>

#include <filesystem>
#include <string>

#include "qghost/campaign.hpp"
#include "qghost/error.hpp"
#include "qghost/io.hpp"

using namespace qghost;

namespace {

std::filesystem::path data_dir() { return QGHOST_DATA_DIR; }

Mat random_mat(const Field& f, std::size_t r, std::size_t c, Rng& rng) {
    Mat m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.element(f);
    return m;
}

}  // namespace

TEST(Fnv, KnownVectors) {
    EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
    EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
    EXPECT_EQ(fnv1a_hex("foobar"), "85944171f73967e8");
}

TEST(Io, MatrixRoundTrip) {
    Rng rng(61);
    for (unsigned k : {1u, 2u, 5u, 16u}) {
        const Field f = Field::make(k);
        for (int t = 0; t < 10; ++t) {
            const Mat m = random_mat(f, rng.between(0, 6), rng.between(0, 6), rng);
            const Mat back = parse_matrix(format_matrix(m));
            EXPECT_EQ(back.field(), f);
            EXPECT_EQ(back, m);
        }
    }
}

TEST(Io, ModuleRoundTripAndDigest) {
    Rng rng(62);
    const Field f = Field::f4();
    const QMod m = random_module(f, rng, 12);
    const std::string text = format_module(m);
    EXPECT_EQ(parse_module(text), m);
    EXPECT_EQ(module_digest(m), fnv1a_hex(text));
    EXPECT_EQ(module_digest(parse_module(text)), module_digest(m));
    EXPECT_NE(module_digest(m), module_digest(regular_module(f)));
}

TEST(Io, FixtureParses) {
    const QMod r = parse_module(read_text_file(data_dir() / "regular.qmod"));
    EXPECT_EQ(r, regular_module(Field::gf2()));
    const LinearRelation rel = parse_relation(read_text_file(data_dir() / "relation-graph.rel"));
    EXPECT_EQ(rel.n, 2u);
    EXPECT_EQ(rel.dim(), 2u);
    EXPECT_EQ(file_kind(read_text_file(data_dir() / "sample-triple.txt")), "triple");
}

TEST(Io, ParseErrors) {
    EXPECT_THROW(parse_matrix("field 2^1 modulus=3\n2 2\n0 1\n"), ParseError);
    EXPECT_THROW(parse_matrix("field 2^1 modulus=3\n1 1\n2\n"), ParseError);
    EXPECT_THROW(parse_matrix("field 2^2 modulus=5\n1 1\n1\n"), ParseError);  // reducible modulus
    EXPECT_THROW(parse_module("qmod dim=2\n"), ParseError);
    EXPECT_THROW(parse_module("nonsense"), ParseError);
    EXPECT_THROW(parse_relation("relation n=1 dimL=2\nfield 2^1 modulus=3\n2 2\n1 1\n1 1\n"), ParseError);
    EXPECT_THROW(read_text_file(data_dir() / "does-not-exist.qmod"), ParseError);
}

TEST(Io, RelationRoundTrip) {
    const Field f = Field::f4();
    const auto rel = LinearRelation::make(2, Mat::from_rows(f, {{1, 0, 0, 2}, {0, 1, 1, 3}}));
    const auto back = parse_relation(format_relation(rel));
    EXPECT_EQ(back.n, rel.n);
    EXPECT_EQ(back.basis, rel.basis);
}

TEST(Io, MapBundleRoundTrip) {
    Rng rng(63);
    const Field f = Field::gf2();
    const QMod m = random_module(f, rng, 10), n = random_module(f, rng, 10);
    const auto hs = hom_space(m, n);
    ASSERT_FALSE(hs.empty());
    const ModMap back = parse_map_bundle(format_map_bundle(hs.back()));
    EXPECT_EQ(back.source(), m);
    EXPECT_EQ(back.target(), n);
    EXPECT_EQ(back.matrix(), hs.back().matrix());
}

TEST(Io, TripleRoundTripWithEmbedding) {
    const TrialInstance inst = sample_trial(CampaignConfig{}, 0);
    ASSERT_TRUE(inst.iota.has_value());
    const TripleFile t = parse_triple(format_triple(inst.triple, inst.iota));
    EXPECT_EQ(t.triple.f1.matrix(), inst.triple.f1.matrix());
    EXPECT_EQ(t.triple.f3.target(), inst.triple.f3.target());
    ASSERT_TRUE(t.iota.has_value());
    EXPECT_EQ(t.iota->matrix(), inst.iota->matrix());
    const TripleFile fixture = parse_triple(read_text_file(data_dir() / "sample-triple.txt"));
    EXPECT_EQ(fixture.triple.composite().matrix(), inst.triple.composite().matrix());
}

TEST(Io, TripleWithMismatchedDigestIsRejected) {
    const TrialInstance inst = sample_trial(CampaignConfig{}, 1);
    std::string text = format_triple(inst.triple);
    const std::string digest = module_digest(inst.triple.source());
    const auto pos = text.find(digest);
    ASSERT_NE(pos, std::string::npos);
    text.replace(pos, digest.size(), std::string(digest.size(), '0'));
    EXPECT_THROW(parse_triple(text), ParseError);
}

TEST(Io, WitnessRoundTrip) {
    LowerBoundConfig cfg;
    cfg.pool = default_pool(Field::gf2());
    const auto r = lower_bound_search(cfg);
    ASSERT_TRUE(r.witness.has_value());
    const DoubleGhostWitness back = parse_witness(format_witness(*r.witness));
    EXPECT_TRUE(verify_double_ghost(back));
    EXPECT_EQ(back.g1.matrix(), r.witness->g1.matrix());
    EXPECT_EQ(file_kind(format_witness(back)), "witness");
}

TEST(Io, CertificateRoundTripAndTamperDetection) {
    const TrialInstance inst = sample_trial(CampaignConfig{}, 0);
    const LiftCertificate c = build_lift(inst.triple, *inst.iota);
    const ModMap f = inst.triple.composite();
    const std::string text = format_certificate(c, f);
    CertificateFile cf = parse_certificate(text);
    EXPECT_TRUE(verify_certificate(cf).ok);
    EXPECT_EQ(cf.tower.size(), c.tower.size());
    // flip one entry of fbar
    Mat bad = cf.fbar.matrix();
    bad(0, bad.cols() - 1) ^= 1;
    cf.fbar = ModMap(cf.fbar.source(), cf.fbar.target(), bad);
    EXPECT_FALSE(verify_certificate(cf).ok);
}

TEST(Io, WriteCreatesDirectories) {
    const auto dir = std::filesystem::temp_directory_path() / "qghost-io-test" / "nested";
    std::filesystem::remove_all(dir.parent_path());
    write_text_file(dir / "m.qmod", format_module(trivial_module(Field::gf2())));
    EXPECT_EQ(parse_module(read_text_file(dir / "m.qmod")), trivial_module(Field::gf2()));
    std::filesystem::remove_all(dir.parent_path());
}
