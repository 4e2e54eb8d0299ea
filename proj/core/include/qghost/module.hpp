#pragma once

// Finitely generated KQ8-modules: validation, radical and socle series,
// homomorphism spaces, projective stripping and injective embeddings.
//
// Every module over R = KQ8 is handled through its (X, Y) action matrices.
// R is a local Frobenius algebra, so projective = injective = free and a
// module is projective-free exactly when the socle word xyxy acts as zero.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qghost/dade.hpp"
#include "qghost/qmod.hpp"

namespace qghost {

struct ValidationReport {
    bool ok = true;
    /// Name of the first violated identity (empty when ok).
    std::string violation;
};

/// Checks x^2 = yxy, y^2 = xyx, xy^2 = y^2x = x^2y = yx^2 = 0 and that every
/// word of length five acts as zero.
ValidationReport validate_qmod(const QMod& m);

/// An action-stable subspace of an ambient module, stored by its rref basis.
struct Submodule {
    QMod ambient;
    Mat basis;

    std::size_t dim() const { return basis.rows(); }
    /// The submodule as a module in its own right (basis order = rows of `basis`).
    QMod module() const;
    /// Inclusion map module() -> ambient.
    ModMap inclusion() const;
};

Submodule rad(const QMod& m);
/// rad^n(M) = J^n M; rad^0 = M.
Submodule rad_n(const QMod& m, std::size_t n);
Submodule soc(const QMod& m);
/// soc^n(M) = {v : J v in soc^{n-1}(M)}; soc^0 = 0.
Submodule soc_n(const QMod& m, std::size_t n);

/// Rref basis of the smallest submodule containing the given row vectors.
Mat action_closure(const QMod& m, const Mat& generators);
/// Module structure on an action-stable subspace given by an rref basis.
QMod restrict_module(const QMod& m, const Mat& rref_basis);

struct Quotient {
    QMod module;
    /// M -> M/S as a dim(M/S) x dim(M) matrix.
    Mat projection;
};
Quotient quotient(const QMod& m, const Mat& submodule_basis);

QMod direct_sum(const QMod& a, const QMod& b);

/// Basis of Hom_R(M, N) as a K-vector space (kernel of the commutation system).
std::vector<ModMap> hom_space(const QMod& m, const QMod& n);

bool is_projective_free(const QMod& m);
/// Number of free summands: rank of the xyxy action.
std::size_t free_rank(const QMod& m);

/// M = M_pf (+) R^rank_free, witnessed by explicit split maps:
/// incl_free * proj_free + incl_pf * proj_pf = Id_M, proj_free * incl_free = Id,
/// proj_pf * incl_pf = Id.
struct StripResult {
    QMod projective_free;
    std::size_t rank_free = 0;
    Mat incl_free;  // R^r -> M
    Mat proj_free;  // M -> R^r
    Mat incl_pf;    // M_pf -> M
    Mat proj_pf;    // M -> M_pf
};
StripResult strip_projectives(const QMod& m);

/// The R-linear map M -> R attached to a K-linear functional lambda on M by
/// Frobenius duality: the xyxy-coefficient of phi(m) is lambda(m).
/// Returns an 8 x dim(M) matrix.
Mat frobenius_hom(const QMod& m, const Mat& functional);

struct Embedding {
    std::size_t v_dim = 0;
    /// M -> R (x) V
    ModMap iota;
};

/// Embedding of M into R (x) V with dim V = dim soc(M), sending the chosen
/// socle basis to xyxy (x) e_k. Works for any module.
Embedding injective_hull(const QMod& m);
/// Same construction, restricted to projective-free M so that the image lies
/// in J (x) V. Throws PreconditionError otherwise.
Embedding injective_embedding(const QMod& m);

QMod base_change(const QMod& m, const FieldEmbedding& e);
ModMap base_change(const ModMap& f, const FieldEmbedding& e);

struct IsoResult {
    enum class Status { Found, NotIsomorphic, Undecided };
    Status status = Status::Undecided;
    std::optional<ModMap> iso;
};

/// Searches Hom(M, N) for an invertible element: up to 64 random samples,
/// then exhaustive search over base-field combinations when dim Hom <= 3.
IsoResult find_isomorphism(const QMod& m, const QMod& n, std::uint64_t seed);

}  // namespace qghost
