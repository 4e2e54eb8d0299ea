#include "qghost/matrix.hpp"

#include <algorithm>
#include <cstdint>
#include <utility>

#include "qghost/error.hpp"

namespace qghost {

namespace {

void require_same_field(const Mat& a, const Mat& b, const char* what) {
    if (a.field() != b.field()) throw ShapeError(std::string(what) + ": mixed fields");
}

RrefResult rref_gf2(const Mat& m) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    const std::size_t words = (cols + 63) / 64;
    std::vector<std::uint64_t> bits(rows * words, 0);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (m(r, c)) bits[r * words + c / 64] |= std::uint64_t{1} << (c % 64);

    RrefResult out{Mat(m.field(), rows, cols), 0, {}};
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        const std::size_t w = c / 64;
        const std::uint64_t mask = std::uint64_t{1} << (c % 64);
        std::size_t p = rank;
        while (p < rows && !(bits[p * words + w] & mask)) ++p;
        if (p == rows) continue;
        if (p != rank)
            std::swap_ranges(bits.begin() + static_cast<std::ptrdiff_t>(p * words),
                             bits.begin() + static_cast<std::ptrdiff_t>((p + 1) * words),
                             bits.begin() + static_cast<std::ptrdiff_t>(rank * words));
        const std::uint64_t* prow = &bits[rank * words];
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank) continue;
            std::uint64_t* irow = &bits[i * words];
            if (irow[w] & mask)
                for (std::size_t k = w; k < words; ++k) irow[k] ^= prow[k];
        }
        out.pivots.push_back(c);
        ++rank;
    }
    out.rank = rank;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            out.reduced(r, c) = static_cast<Elem>((bits[r * words + c / 64] >> (c % 64)) & 1u);
    return out;
}

RrefResult rref_general(const Mat& m) {
    const Field& f = m.field();
    Mat a = m;
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && a(p, c) == 0) ++p;
        if (p == rows) continue;
        if (p != rank) {
            auto rp = a.row(p);
            auto rr = a.row(rank);
            std::swap_ranges(rp.begin(), rp.end(), rr.begin());
        }
        auto prow = a.row(rank);
        const Elem s = f.inv(prow[c]);
        for (std::size_t k = c; k < cols; ++k) prow[k] = f.mul(prow[k], s);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank) continue;
            auto irow = a.row(i);
            const Elem t = irow[c];
            if (t == 0) continue;
            for (std::size_t k = c; k < cols; ++k)
                if (prow[k]) irow[k] = f.add(irow[k], f.mul(t, prow[k]));
        }
        pivots.push_back(c);
        ++rank;
    }
    return {std::move(a), rank, std::move(pivots)};
}

}  // namespace

Mat::Mat(Field f, std::size_t rows, std::size_t cols)
    : field_(std::move(f)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Mat::Mat(Field f, std::size_t rows, std::size_t cols, std::vector<Elem> entries)
    : field_(std::move(f)), rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) throw ShapeError("matrix entry count mismatch");
    for (Elem e : data_)
        if (!field_.contains(e)) throw PreconditionError("matrix entry outside " + field_.name());
}

Mat Mat::identity(Field f, std::size_t n) {
    Mat m(std::move(f), n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Mat Mat::from_rows(Field f, const std::vector<std::vector<Elem>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows.front().size() : 0;
    std::vector<Elem> e;
    e.reserve(r * c);
    for (const auto& row : rows) {
        if (row.size() != c) throw ShapeError("ragged rows");
        e.insert(e.end(), row.begin(), row.end());
    }
    return Mat(std::move(f), r, c, std::move(e));
}

Mat Mat::row_vector(Field f, std::span<const Elem> v) {
    return Mat(std::move(f), 1, v.size(), std::vector<Elem>(v.begin(), v.end()));
}

Mat Mat::column_vector(Field f, std::span<const Elem> v) {
    return Mat(std::move(f), v.size(), 1, std::vector<Elem>(v.begin(), v.end()));
}

std::vector<Elem> Mat::column(std::size_t c) const {
    std::vector<Elem> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

Mat Mat::transpose() const {
    Mat t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Mat Mat::operator*(const Mat& o) const {
    require_same_field(*this, o, "multiply");
    if (cols_ != o.rows_) throw ShapeError("multiply: inner dimensions differ");
    Mat out(field_, rows_, o.cols_);
    const Field& f = field_;
    if (f.degree() == 1) {
        for (std::size_t i = 0; i < rows_; ++i) {
            auto orow = out.row(i);
            for (std::size_t k = 0; k < cols_; ++k) {
                if (!(*this)(i, k)) continue;
                auto brow = o.row(k);
                for (std::size_t j = 0; j < o.cols_; ++j) orow[j] ^= brow[j];
            }
        }
        return out;
    }
    for (std::size_t i = 0; i < rows_; ++i) {
        auto orow = out.row(i);
        for (std::size_t k = 0; k < cols_; ++k) {
            const Elem a = (*this)(i, k);
            if (!a) continue;
            auto brow = o.row(k);
            for (std::size_t j = 0; j < o.cols_; ++j)
                if (brow[j]) orow[j] = f.add(orow[j], f.mul(a, brow[j]));
        }
    }
    return out;
}

Mat Mat::operator+(const Mat& o) const {
    require_same_field(*this, o, "add");
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeError("add: shape mismatch");
    Mat out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] ^= o.data_[i];
    return out;
}

Mat Mat::scaled(Elem c) const {
    Mat out = *this;
    for (auto& e : out.data_) e = field_.mul(e, c);
    return out;
}

std::vector<Elem> Mat::apply(std::span<const Elem> v) const {
    if (v.size() != cols_) throw ShapeError("apply: vector length mismatch");
    std::vector<Elem> out(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
        Elem acc = 0;
        for (std::size_t c = 0; c < cols_; ++c) acc ^= field_.mul((*this)(r, c), v[c]);
        out[r] = acc;
    }
    return out;
}

bool Mat::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](Elem e) { return e == 0; });
}

bool Mat::operator==(const Mat& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

Mat Mat::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw ShapeError("block out of range");
    Mat out(field_, nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
        for (std::size_t c = 0; c < nc; ++c) out(r, c) = (*this)(r0 + r, c0 + c);
    return out;
}

Mat Mat::select_rows(std::span<const std::size_t> idx) const {
    Mat out(field_, idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i) {
        auto src = row(idx[i]);
        std::copy(src.begin(), src.end(), out.row(i).begin());
    }
    return out;
}

Mat Mat::select_cols(std::span<const std::size_t> idx) const {
    Mat out(field_, rows_, idx.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t i = 0; i < idx.size(); ++i) out(r, i) = (*this)(r, idx[i]);
    return out;
}

void Mat::set_block(std::size_t r0, std::size_t c0, const Mat& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw ShapeError("set_block out of range");
    for (std::size_t r = 0; r < b.rows_; ++r)
        for (std::size_t c = 0; c < b.cols_; ++c) (*this)(r0 + r, c0 + c) = b(r, c);
}

Mat Mat::vstack(const Mat& a, const Mat& b) {
    require_same_field(a, b, "vstack");
    if (a.cols_ != b.cols_) throw ShapeError("vstack: column counts differ");
    Mat out(a.field_, a.rows_ + b.rows_, a.cols_);
    std::copy(a.data_.begin(), a.data_.end(), out.data_.begin());
    std::copy(b.data_.begin(), b.data_.end(),
              out.data_.begin() + static_cast<std::ptrdiff_t>(a.data_.size()));
    return out;
}

Mat Mat::hstack(const Mat& a, const Mat& b) {
    require_same_field(a, b, "hstack");
    if (a.rows_ != b.rows_) throw ShapeError("hstack: row counts differ");
    Mat out(a.field_, a.rows_, a.cols_ + b.cols_);
    out.set_block(0, 0, a);
    out.set_block(0, a.cols_, b);
    return out;
}

Mat Mat::kron(const Mat& a, const Mat& b) {
    require_same_field(a, b, "kron");
    Mat out(a.field_, a.rows_ * b.rows_, a.cols_ * b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t j = 0; j < a.cols_; ++j) {
            const Elem s = a(i, j);
            if (!s) continue;
            for (std::size_t k = 0; k < b.rows_; ++k)
                for (std::size_t l = 0; l < b.cols_; ++l)
                    out(i * b.rows_ + k, j * b.cols_ + l) = a.field_.mul(s, b(k, l));
        }
    return out;
}

RrefResult rref(const Mat& m) {
    if (m.field().degree() == 1) return rref_gf2(m);
    return rref_general(m);
}

std::size_t rank(const Mat& m) { return rref(m).rank; }

Mat kernel(const Mat& m) {
    const std::size_t n = m.cols();
    if (m.rows() == 0) return Mat::identity(m.field(), n);
    auto r = rref(m);
    std::vector<bool> is_pivot(n, false);
    for (auto p : r.pivots) is_pivot[p] = true;
    Mat out(m.field(), n - r.rank, n);
    std::size_t k = 0;
    for (std::size_t fcol = 0; fcol < n; ++fcol) {
        if (is_pivot[fcol]) continue;
        out(k, fcol) = 1;
        for (std::size_t i = 0; i < r.rank; ++i) out(k, r.pivots[i]) = r.reduced(i, fcol);
        ++k;
    }
    return out;
}

Mat row_space(const Mat& m) {
    auto r = rref(m);
    return r.reduced.block(0, 0, r.rank, m.cols());
}

Mat image(const Mat& m) { return row_space(m.transpose()); }

std::optional<Mat> solve(const Mat& a, const Mat& b) {
    require_same_field(a, b, "solve");
    if (a.rows() != b.rows()) throw ShapeError("solve: row counts differ");
    const std::size_t n = a.cols();
    auto r = rref(Mat::hstack(a, b));
    Mat x(a.field(), n, b.cols());
    for (std::size_t i = 0; i < r.rank; ++i) {
        const std::size_t p = r.pivots[i];
        if (p >= n) return std::nullopt;
        for (std::size_t c = 0; c < b.cols(); ++c) x(p, c) = r.reduced(i, n + c);
    }
    return x;
}

std::optional<Mat> inverse(const Mat& a) {
    if (!a.is_square()) throw ShapeError("inverse of a non-square matrix");
    auto r = rref(Mat::hstack(a, Mat::identity(a.field(), a.rows())));
    const std::size_t n = a.rows();
    if (r.rank < n || (n > 0 && r.pivots[n - 1] >= n)) return std::nullopt;
    return r.reduced.block(0, n, n, n);
}

Elem determinant(const Mat& a) {
    if (!a.is_square()) throw ShapeError("determinant of a non-square matrix");
    const Field& f = a.field();
    Mat m = a;
    const std::size_t n = m.rows();
    Elem det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            auto rp = m.row(p);
            auto rc = m.row(c);
            std::swap_ranges(rp.begin(), rp.end(), rc.begin());
        }
        det = f.mul(det, m(c, c));
        const Elem s = f.inv(m(c, c));
        for (std::size_t i = c + 1; i < n; ++i) {
            const Elem t = f.mul(m(i, c), s);
            if (!t) continue;
            for (std::size_t k = c; k < n; ++k) m(i, k) = f.add(m(i, k), f.mul(t, m(c, k)));
        }
    }
    return det;
}

Mat subspace_sum(const Mat& a, const Mat& b) { return row_space(Mat::vstack(a, b)); }

Mat subspace_intersect(const Mat& a, const Mat& b) {
    require_same_field(a, b, "intersect");
    if (a.cols() != b.cols()) throw ShapeError("intersect: ambient dimensions differ");
    if (a.rows() == 0 || b.rows() == 0) return Mat(a.field(), 0, a.cols());
    Mat ra = row_space(a);
    Mat rb = row_space(b);
    // (alpha, beta) with alpha*A + beta*B = 0 gives alpha*A in both spaces.
    Mat k = kernel(Mat::vstack(ra, rb).transpose());
    Mat alpha = k.block(0, 0, k.rows(), ra.rows());
    return row_space(alpha * ra);
}

Mat annihilator(const Mat& s) {
    if (s.rows() == 0) return Mat::identity(s.field(), s.cols());
    return kernel(s);
}

Mat preimage(const Mat& a, const Mat& s) {
    require_same_field(a, s, "preimage");
    if (s.cols() != a.rows()) throw ShapeError("preimage: subspace lives in the wrong space");
    Mat ann = annihilator(s);
    if (ann.rows() == 0) return Mat::identity(a.field(), a.cols());
    return row_space(kernel(ann * a));
}

bool subspace_contains(const Mat& s, std::span<const Elem> v) {
    if (v.size() != s.cols()) throw ShapeError("contains: length mismatch");
    Mat t = Mat::row_vector(s.field(), v);
    return subspace_contains(s, t);
}

bool subspace_contains(const Mat& s, const Mat& t) {
    require_same_field(s, t, "contains");
    if (t.rows() == 0) return true;
    return rank(Mat::vstack(s, t)) == rank(s);
}

bool subspace_equal(const Mat& a, const Mat& b) {
    return a.cols() == b.cols() && row_space(a) == row_space(b);
}

Mat standard_complement(const Mat& s) {
    auto r = rref(s);
    std::vector<bool> is_pivot(s.cols(), false);
    for (auto p : r.pivots) is_pivot[p] = true;
    Mat out(s.field(), s.cols() - r.rank, s.cols());
    std::size_t k = 0;
    for (std::size_t c = 0; c < s.cols(); ++c)
        if (!is_pivot[c]) out(k++, c) = 1;
    return out;
}

Mat coordinates(const Mat& b, const Mat& v) {
    require_same_field(b, v, "coordinates");
    if (v.rows() == 0) return Mat(b.field(), 0, b.rows());
    auto x = solve(b.transpose(), v.transpose());
    if (!x) throw PreconditionError("coordinates: vector outside the span");
    return x->transpose();
}

Mat base_change(const Mat& m, const FieldEmbedding& e) {
    if (m.field() != e.source()) throw ShapeError("base_change: matrix is not over the source field");
    std::vector<Elem> out(m.entries().size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = e(m.entries()[i]);
    return Mat(e.target(), m.rows(), m.cols(), std::move(out));
}

Mat retract(const Mat& m, const FieldEmbedding& e) {
    if (m.field() != e.target()) throw ShapeError("retract: matrix is not over the target field");
    std::vector<Elem> out(m.entries().size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = e.retract(m.entries()[i]);
    return Mat(e.source(), m.rows(), m.cols(), std::move(out));
}

}  // namespace qghost
