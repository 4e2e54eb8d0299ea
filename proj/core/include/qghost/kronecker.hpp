#pragma once

// Linear relations L <= V^2 and their decomposition into indecomposables.
//
// A relation is a representation of the Kronecker quiver: W = L with the two
// projections a(u, w) = u and b(u, w) = w. Summands come in four families,
// written in the bases e_1..e_n of their V-part:
//   Case1   (e1,0), (e2,e1), ..., (en,e(n-1)), (0,en)     dim L_i = n + 1
//   Case2a  (e1,0), (e2,e1), ..., (en,e(n-1))             dim L_i = n
//   Case2b  (0,e1), (e1,e2), ..., (e(n-1),en)             dim L_i = n
//   Case3   (e2,e1), ..., (en,e(n-1))                     dim L_i = n - 1
//   Case4   {(v, F v)} with F a single companion block of p^m, p irreducible

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qghost/module.hpp"
#include "qghost/poly.hpp"

namespace qghost {

struct LinearRelation {
    std::size_t n = 0;
    /// Independent rows (u | w) of length 2n.
    Mat basis;

    const Field& field() const { return basis.field(); }
    std::size_t dim() const { return basis.rows(); }

    /// Validates shape and independence; throws PreconditionError otherwise.
    static LinearRelation make(std::size_t n, Mat basis);
};

enum class KroneckerCase { Case1, Case2a, Case2b, Case3, Case4 };
std::string_view case_name(KroneckerCase c);

struct KroneckerSummand {
    KroneckerCase kind = KroneckerCase::Case1;
    /// e_1..e_n as rows in ambient V coordinates.
    Mat v_basis;
    /// Basis of L_i as rows (u | w), in the order of the case's shape.
    Mat l_basis;
    /// Case4: F in the basis e, its characteristic polynomial p^m and [(p, m)].
    std::optional<Mat> f_matrix;
    std::optional<Poly> char_poly;
    std::vector<PolyFactor> factors;

    std::size_t n() const { return v_basis.rows(); }
};

struct KroneckerDecomposition {
    std::vector<KroneckerSummand> summands;
    /// All summand bases stacked: row i is the i-th new basis vector of V.
    Mat change_of_basis;
};

KroneckerDecomposition decompose(const LinearRelation& rel);

/// l_basis matches the case shape exactly for the given v_basis (and, in
/// Case4, F is the companion matrix of a primary polynomial).
bool check_shape(const KroneckerSummand& s);

/// V is the direct sum of the V_i, every L_i lies in L and in V_i^2, the L_i
/// together span L, and every summand passes check_shape. On failure `why`
/// receives a short reason.
bool verify_decomposition(const LinearRelation& rel, const KroneckerDecomposition& d,
                          std::string* why = nullptr);

/// Exhaustive search for V = V1 (+) V2 with L = (L n V1^2) (+) (L n V2^2).
/// Only for small instances: throws PreconditionError when q^(n^2) > 2^20.
bool is_indecomposable_exhaustive(const LinearRelation& rel);

/// L_{x,y}(M) for a submodule M <= J (x) V of R (x) V (dim V = n):
/// {(u, w) : x (x) u + y (x) w in M + J^2 (x) V}.
/// Throws PreconditionError when M is not inside J (x) V.
LinearRelation relation_of_module(const Mat& submodule_rows, std::size_t n);

/// Coefficient rows c with c * submodule_rows in x (x) u + y (x) w + J^2 (x) V
/// for each target row (u | w). Throws InvariantError if some row has no
/// representative.
Mat pick_representatives(const Mat& submodule_rows, std::size_t n, const Mat& targets);

/// Structured text block describing each summand.
std::string summand_report(const KroneckerDecomposition& d);

/// Quiver representation helper: given an invariant sub-representation
/// (rref rows per vertex), finds an invariant complement. Arrow maps are
/// dim(to) x dim(from) matrices.
struct QuiverArrow {
    std::size_t from;
    std::size_t to;
    Mat map;
};
std::optional<std::vector<Mat>> invariant_complement(const std::vector<std::size_t>& dims,
                                                     const std::vector<QuiverArrow>& arrows,
                                                     const std::vector<Mat>& sub);

/// Decomposition of V under an endomorphism F into cyclic primary blocks;
/// each block basis is v, Fv, ..., F^(d-1) v.
struct CyclicBlock {
    Mat basis;
    Poly factor;
    unsigned exponent;
};
std::vector<CyclicBlock> primary_cyclic_decomposition(const Mat& f);

/// Jordan chains of a nilpotent G: rows e_1..e_k per chain with G e_1 = 0 and
/// G e_j = e_(j-1).
std::vector<Mat> nilpotent_chains(const Mat& g);

}  // namespace qghost
