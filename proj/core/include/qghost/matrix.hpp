#pragma once

// Dense exact matrices over GF(2^k) and the subspace toolkit built on them.
//
// Conventions used throughout the library:
//   * a matrix acts on column vectors (y = A x);
//   * a subspace is stored as the nonzero rows of its reduced row echelon
//     form, so two subspaces are equal iff their basis matrices are equal.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qghost/field.hpp"

namespace qghost {

class FieldEmbedding;

class Mat {
public:
    Mat(Field f, std::size_t rows, std::size_t cols);
    Mat(Field f, std::size_t rows, std::size_t cols, std::vector<Elem> entries);

    static Mat identity(Field f, std::size_t n);
    static Mat from_rows(Field f, const std::vector<std::vector<Elem>>& rows);
    /// One-row matrix.
    static Mat row_vector(Field f, std::span<const Elem> v);
    /// One-column matrix.
    static Mat column_vector(Field f, std::span<const Elem> v);

    const Field& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<Elem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::vector<Elem> column(std::size_t c) const;
    const std::vector<Elem>& entries() const { return data_; }

    Mat transpose() const;
    Mat operator*(const Mat& o) const;
    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const { return *this + o; }
    Mat scaled(Elem c) const;
    /// A * v for a column vector given as a span.
    std::vector<Elem> apply(std::span<const Elem> v) const;

    bool is_zero() const;
    bool is_square() const { return rows_ == cols_; }
    bool operator==(const Mat& o) const;
    bool operator!=(const Mat& o) const { return !(*this == o); }

    Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    Mat select_rows(std::span<const std::size_t> idx) const;
    Mat select_cols(std::span<const std::size_t> idx) const;
    void set_block(std::size_t r0, std::size_t c0, const Mat& b);

    static Mat vstack(const Mat& a, const Mat& b);
    static Mat hstack(const Mat& a, const Mat& b);
    /// Kronecker product a (x) b.
    static Mat kron(const Mat& a, const Mat& b);

private:
    Field field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Elem> data_;
};

struct RrefResult {
    Mat reduced;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

/// Reduced row echelon form. Over GF(2) rows are bit-packed into 64-bit words
/// for the elimination.
RrefResult rref(const Mat& m);
std::size_t rank(const Mat& m);

/// Basis (rows) of {v : m v = 0}.
Mat kernel(const Mat& m);
/// Basis (rows, rref) of the column space {m v}.
Mat image(const Mat& m);
/// Canonical basis (rref, nonzero rows) of the row space.
Mat row_space(const Mat& m);

/// Some x with a x = b (b may have several columns), or nullopt.
std::optional<Mat> solve(const Mat& a, const Mat& b);
std::optional<Mat> inverse(const Mat& a);
Elem determinant(const Mat& a);

/// Subspaces given by row bases. Results are canonical rref bases.
Mat subspace_sum(const Mat& a, const Mat& b);
Mat subspace_intersect(const Mat& a, const Mat& b);
/// {v : a v in rowspace(s)}, as a row basis.
Mat preimage(const Mat& a, const Mat& s);
/// Rows w with w.v = 0 for every row v of s.
Mat annihilator(const Mat& s);
bool subspace_contains(const Mat& s, std::span<const Elem> v);
bool subspace_contains(const Mat& s, const Mat& t);
bool subspace_equal(const Mat& a, const Mat& b);
/// Standard basis vectors completing the rref basis s to a basis of the ambient space.
Mat standard_complement(const Mat& s);
/// Coordinates of the rows of v with respect to the rows of the independent
/// basis b (throws when some row is outside the span). Result: v.rows x b.rows.
Mat coordinates(const Mat& b, const Mat& v);

/// Image of m under the entrywise field embedding.
Mat base_change(const Mat& m, const FieldEmbedding& e);
/// Entrywise retraction onto the subfield (source-linear).
Mat retract(const Mat& m, const FieldEmbedding& e);

}  // namespace qghost
