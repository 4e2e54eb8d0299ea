#pragma once

// The stable module category of KQ8: syzygies, Tate cohomology through the
// period-four resolution of K, stable triviality, and ghost maps.
//
// Tate cohomology of M in degree n is represented by stable maps
// Omega^n K -> M. A map f: M -> N is a ghost when f o h is stably trivial for
// every h: Omega^n K -> M, n = 0..3; the certificate Omega^4 K = K makes this
// cover every degree.

#include <array>
#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qghost/module.hpp"
#include "qghost/rng.hpp"

namespace qghost {

struct Syzygy {
    QMod omega;
    std::size_t cover_rank = 0;
    /// Minimal projective cover R^g -> M.
    ModMap cover;
    /// Omega M -> R^g.
    ModMap inclusion;
};

/// Kernel of a minimal projective cover, g = dim M / rad M.
Syzygy syzygy(const QMod& m);

/// Minimal projective resolution of the trivial module.
struct Resolution {
    std::vector<std::size_t> ranks;
    /// boundaries[i-1] = d_i: R^{r_i} -> R^{r_{i-1}} for i >= 1.
    std::vector<Mat> boundaries;
    /// R^{r_0} -> K.
    Mat augmentation;
};
Resolution minimal_resolution(const Field& f, std::size_t length);

struct PeriodicityCertificate {
    /// dim Omega^n K for n = 0..4.
    std::array<std::size_t, 5> dims{};
    /// Ranks of the minimal covers of Omega^n K for n = 0..3.
    std::array<std::size_t, 4> cover_ranks{};
    /// An isomorphism Omega^4 K -> K.
    ModMap iso;
};

/// Computes Omega^n K for n <= 4 and exhibits Omega^4 K = K.
/// Throws InvariantError if no isomorphism is found.
PeriodicityCertificate verify_periodicity(const Field& f);

/// Per-field cache of Omega^n K (n = 0..3), their injective hulls and the
/// periodicity certificate. Built once, shared read-only.
class TateContext {
public:
    static std::shared_ptr<const TateContext> get(const Field& f);

    const QMod& omega(std::size_t n) const { return omega_.at(n); }
    const Embedding& hull(std::size_t n) const { return hull_.at(n); }
    const PeriodicityCertificate& certificate() const { return cert_; }

    explicit TateContext(const Field& f);

private:
    std::vector<QMod> omega_;
    std::vector<Embedding> hull_;
    PeriodicityCertificate cert_;
};

/// Linear system whose solutions n = (n_k) give maps h: R (x) V -> N with
/// h(1 (x) e_k) = n_k; column (k, b) holds vec(h o iota) for n_k = e_b.
Mat factoring_system(const Embedding& hull, const QMod& target);

/// Some h: R (x) V -> N with h o iota = f, if one exists.
std::optional<ModMap> factor_through(const ModMap& f, const Embedding& hull);

struct StableWitness {
    Embedding hull;
    /// factor o hull.iota = f.
    ModMap factor;
};
std::optional<StableWitness> stably_trivial_witness(const ModMap& f);
/// f factors through a projective module.
bool stably_trivial(const ModMap& f);
/// The dual test: f lifts through a projective cover of its target.
bool stably_trivial_via_cover(const ModMap& f);

/// Transports a witness over an extension field back to the base field by
/// the entrywise retraction. `base_hull` must be the hull whose base change
/// was used over the extension. Returns nullopt if the transported map fails
/// to factor f.
std::optional<StableWitness> descend_witness(const ModMap& f, const Embedding& base_hull,
                                             const ModMap& factor_ext, const FieldEmbedding& e);

bool is_ghost(const ModMap& f);

struct GhostSpace {
    QMod source;
    QMod target;
    std::vector<ModMap> basis;
};
GhostSpace ghost_space(const QMod& m, const QMod& n);
/// Random element of the ghost space. Throws PreconditionError when empty.
ModMap sample_ghost(const GhostSpace& g, std::uint64_t seed);

/// Maps h_i: Omega^n K -> M, n = 0..3, whose classes span stable Hom.
struct TateGenerators {
    std::vector<std::size_t> degrees;
    std::vector<ModMap> maps;
};
TateGenerators tate_generators(const QMod& m);

/// The universal ghost out of M: the cofibre of the sum of Tate generators,
/// with the projective summands of the target stripped.
struct UniversalGhost {
    QMod target;
    ModMap ghost;
};
UniversalGhost universal_ghost(const QMod& m);

/// Random submodule of R^k (k <= 3) generated by a few random vectors.
QMod random_module(const Field& f, Rng& rng, std::size_t max_dim);

struct DoubleGhostWitness {
    QMod m0;
    QMod m1;
    QMod m2;
    ModMap g1;  // m0 -> m1
    ModMap g2;  // m1 -> m2
    std::string origin;
};

/// Re-checks a witness from scratch: both maps ghosts, composite not stably trivial.
bool verify_double_ghost(const DoubleGhostWitness& w);

struct LowerBoundConfig {
    std::vector<QMod> pool;
    std::uint64_t seed = 1;
    std::chrono::milliseconds budget{600000};
    /// Random candidates drawn after the pool is exhausted (0 disables).
    std::size_t random_candidates = 64;
    std::size_t random_max_dim = 12;
};

struct LowerBoundResult {
    std::optional<DoubleGhostWitness> witness;
    std::size_t candidates = 0;
    bool budget_exhausted = false;
};

/// Pool of Omega^n K (n <= 4), R/J^i and J^i.
std::vector<QMod> default_pool(const Field& f);

/// Looks for ghosts g1, g2 with g2 o g1 not stably trivial: first all pairs of
/// ghost-space basis elements over pool triples, then universal ghosts of pool
/// members, then universal ghosts of random modules.
LowerBoundResult lower_bound_search(const LowerBoundConfig& cfg);

}  // namespace qghost
