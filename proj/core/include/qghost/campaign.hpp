#pragma once

// Randomized verification campaigns and their line-oriented reports.
//
// Seeds: trial i of a campaign draws everything from Rng::stream(seed, i), so
// a trial is reproducible on its own and independent of the job count.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qghost/lift.hpp"
#include "qghost/stable.hpp"

namespace qghost {

/// One report line: ordered key=value fields. Values never contain spaces.
struct Record {
    std::vector<std::pair<std::string, std::string>> fields;

    Record& add(std::string key, std::string value);
    Record& add(std::string key, std::size_t value) { return add(std::move(key), std::to_string(value)); }
    Record& add(std::string key, bool value) { return add(std::move(key), std::string(value ? "1" : "0")); }
    Record& add(std::string key, const char* value) { return add(std::move(key), std::string(value)); }
    std::string line() const;
};

struct Report {
    std::vector<Record> records;

    Record& add() { return records.emplace_back(); }
    std::string text() const;
};

/// M <= J (x) V containing J^2 (x) V whose relation L_{x,y}(M) is the graph of a.
Submodule graph_module(const Mat& a);

/// A random n x n matrix whose characteristic polynomial is irreducible.
Mat random_irreducible_matrix(const Field& f, std::size_t n, Rng& rng);

struct CampaignConfig {
    std::size_t trials = 200;
    std::size_t max_dim = 12;
    unsigned field_degree = 1;
    std::uint64_t seed = 1;
    /// 0 means one job per hardware thread.
    unsigned jobs = 0;
    /// Every k-th trial starts from a graph module of an irreducible 2 x 2 matrix
    /// (0 disables).
    std::size_t graph_every = 5;
    /// Candidate targets tried per ghost in the chain.
    std::size_t candidates = 12;
};

struct TrialInstance {
    std::string kind;
    GhostTriple triple;
    std::optional<ModMap> iota;
};

/// Draws M and a chain of three ghosts, preferring ghosts that keep the
/// composite nonzero.
TrialInstance sample_trial(const CampaignConfig& cfg, std::size_t index);

struct TrialResult {
    std::size_t index = 0;
    std::string kind;
    std::vector<std::size_t> dims;
    bool nonzero = false;
    bool lift_trivial = false;
    bool direct_trivial = false;
    std::string error;
    std::string tower;
    std::string cases;
    bool extension = false;

    bool agree() const { return lift_trivial == direct_trivial; }
    bool passed() const { return lift_trivial && direct_trivial; }
};

TrialResult run_trial(const TrialInstance& inst, std::size_t index);

struct CampaignResult {
    std::vector<TrialResult> trials;
    /// Instances of failed trials, for dumping.
    std::vector<std::pair<std::size_t, TrialInstance>> failures;

    bool all_trivial() const;
    std::size_t extension_trials() const;
};

/// Runs the trials, in parallel when cfg.jobs != 1; results are ordered by index.
CampaignResult verify_theorem(const CampaignConfig& cfg);

Report campaign_report(const CampaignConfig& cfg, const CampaignResult& res);

}  // namespace qghost
