#pragma once

// Extending a threefold ghost f: M -> N along an embedding M -> R (x) V to a
// map R (x) V -> rad^2(N), which exhibits f as stably trivial.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qghost/kronecker.hpp"
#include "qghost/stable.hpp"

namespace qghost {

/// Solves t m = target with m in rad(N), for t = a x + b y + (J^2 terms) with
/// a, b nonzero and target in rad^2(N). Coefficients are in Dade's basis order.
/// Throws PreconditionError when t lies on a coordinate axis or the target is
/// outside rad^2(N), InvariantError when the solve fails.
Mat solve_in_radical(const QMod& n, const std::array<Elem, kDadeDim>& t, const Mat& target);

enum class Letter { X, Y };

/// For m in M (a column in M's coordinates) with iota(m) in t (x) v + J^2 (x) V,
/// returns n with f(m) = xyx n (t = x) or yxy n (t = y). Throws
/// PreconditionError when m lacks that leading form; nullopt means no such n.
std::optional<Mat> solve_leading(const ModMap& f, const Mat& iota, const Mat& m, Letter t);

struct GhostTriple {
    ModMap f1;  // M -> N1
    ModMap f2;  // N1 -> N2
    ModMap f3;  // N2 -> N

    ModMap composite() const { return compose(f3, compose(f2, f1)); }
    const QMod& source() const { return f1.source(); }
    const QMod& target() const { return f3.target(); }
};

/// Composability, homomorphism checks, every f_i a ghost, and M, N1, N2, N
/// projective-free.
ValidationReport validate_triple(const GhostTriple& t);

struct LiftFlags {
    bool extends = false;        // fbar o iota = f
    bool image_in_rad2 = false;  // image(fbar) <= rad^2(N)
    bool kills_j2 = false;       // fbar(J^2 (x) V) = 0

    bool all() const { return extends && image_in_rad2 && kills_j2; }
};

LiftFlags check_lift(const ModMap& fbar, const ModMap& iota, const ModMap& f);

struct LiftCertificate {
    ModMap iota;
    ModMap fbar;
    LiftFlags flags;
    /// Base field first, then the splitting field if one was needed.
    std::vector<Field> tower;
    /// Decomposition of L_{x,y}(M) over the base field.
    KroneckerDecomposition decomposition;
    /// Case4 summands whose factor is not linear over the base field.
    std::size_t extension_summands = 0;
};

/// Runs the construction for the composite f with the given embedding, which
/// must land in J (x) V. Throws PreconditionError when the hypotheses fail and
/// InvariantError when a step or the final verification fails.
LiftCertificate build_lift(const ModMap& f, const ModMap& iota);
/// Validates the triple first and embeds M by injective_embedding.
LiftCertificate build_lift(const GhostTriple& triple);
LiftCertificate build_lift(const GhostTriple& triple, const ModMap& iota);

struct OracleReport {
    bool lift_trivial = false;
    bool direct_trivial = false;
    std::string lift_error;
    std::optional<LiftCertificate> certificate;

    bool agree() const { return lift_trivial == direct_trivial; }
};

/// Runs build_lift and the direct factoring test on the composite.
OracleReport stable_triviality_oracle_compare(const GhostTriple& triple,
                                              const std::optional<ModMap>& iota = std::nullopt);

}  // namespace qghost
