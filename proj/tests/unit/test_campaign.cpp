#include <gtest/gtest.h>

#include "qghost/campaign.hpp"
#include "qghost/error.hpp"

using namespace qghost;

TEST(Record, ValuesNeverContainSpaces) {
    Record r;
    r.add("a", "x y").add("b", std::size_t{3}).add("c", true);
    EXPECT_EQ(r.line(), "a=x_y b=3 c=1");
    Report rep;
    rep.add().add("k", "v");
    rep.add().add("k", "w");
    EXPECT_EQ(rep.text(), "k=v\nk=w\n");
}

TEST(Campaign, GraphModuleRelationIsTheGraph) {
    Rng rng(71);
    for (unsigned k : {1u, 2u}) {
        const Field f = Field::make(k);
        const Mat a = random_irreducible_matrix(f, 2, rng);
        EXPECT_TRUE(is_irreducible(char_poly(a)));
        const Submodule s = graph_module(a);
        EXPECT_EQ(s.dim(), 12u);
        EXPECT_TRUE(s.inclusion().is_homomorphism());
        EXPECT_TRUE(is_projective_free(s.module()));
    }
}

TEST(Campaign, TrialsAreReproducible) {
    CampaignConfig cfg;
    for (std::size_t i : {0u, 3u, 7u}) {
        const TrialInstance a = sample_trial(cfg, i), b = sample_trial(cfg, i);
        EXPECT_EQ(a.kind, b.kind);
        EXPECT_EQ(a.triple.composite().matrix(), b.triple.composite().matrix());
    }
    EXPECT_EQ(sample_trial(cfg, 0).kind, "graph");
    EXPECT_EQ(sample_trial(cfg, 1).kind, "random");
}

TEST(Campaign, SmallCampaignIsAllTrivialAndJobIndependent) {
    CampaignConfig cfg;
    cfg.trials = 20;
    cfg.jobs = 1;
    const CampaignResult one = verify_theorem(cfg);
    cfg.jobs = 4;
    const CampaignResult four = verify_theorem(cfg);
    EXPECT_TRUE(one.all_trivial());
    EXPECT_TRUE(one.failures.empty());
    EXPECT_EQ(campaign_report(cfg, one).text(), campaign_report(cfg, four).text());
    EXPECT_GT(one.extension_trials(), 0u);
    for (const auto& t : one.trials) EXPECT_TRUE(t.agree());
}

TEST(Campaign, ReportShape) {
    CampaignConfig cfg;
    cfg.trials = 3;
    const std::string text = campaign_report(cfg, verify_theorem(cfg)).text();
    EXPECT_EQ(text.rfind("command=verify-theorem", 0), 0u);
    EXPECT_NE(text.find("summary=totals"), std::string::npos);
    EXPECT_NE(text.find("verdict=all-trivial"), std::string::npos);
}

TEST(Campaign, ZeroTrialsIsRejected) {
    CampaignConfig cfg;
    cfg.trials = 0;
    EXPECT_THROW(verify_theorem(cfg), PreconditionError);
}
