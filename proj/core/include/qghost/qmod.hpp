#pragma once

#include <string>
#include <string_view>

#include "qghost/matrix.hpp"

namespace qghost {

/// A finitely generated left module over R = KQ8, given by the action matrices
/// of Dade's generators x and y on K^dim (column vectors). Construction checks
/// shapes only; use validate_qmod for the defining relations.
class QMod {
public:
    QMod(Mat x, Mat y);
    /// The zero module over f.
    explicit QMod(Field f);

    const Field& field() const { return x_.field(); }
    std::size_t dim() const { return x_.rows(); }
    const Mat& x() const { return x_; }
    const Mat& y() const { return y_; }

    /// Matrix of a word in x and y ("" or "1" is the identity); the leftmost
    /// letter acts last, so word("xy") = X*Y.
    Mat word(std::string_view w) const;
    /// Matrix of the basis word with index i in Dade's basis order.
    Mat basis_word(std::size_t i) const;

    bool operator==(const QMod& o) const { return x_ == o.x_ && y_ == o.y_; }

private:
    Mat x_;
    Mat y_;
};

/// A module homomorphism source -> target, stored as a target.dim x source.dim
/// matrix.
class ModMap {
public:
    ModMap(QMod source, QMod target, Mat matrix);

    static ModMap zero(const QMod& source, const QMod& target);
    static ModMap identity(const QMod& m);

    const QMod& source() const { return source_; }
    const QMod& target() const { return target_; }
    const Mat& matrix() const { return matrix_; }
    const Field& field() const { return matrix_.field(); }

    /// True when F X_src = X_tgt F and F Y_src = Y_tgt F.
    bool is_homomorphism() const;
    bool is_zero() const { return matrix_.is_zero(); }

private:
    QMod source_;
    QMod target_;
    Mat matrix_;
};

/// g o f, i.e. apply f first. Throws ShapeError if target(f) != source(g).
ModMap compose(const ModMap& g, const ModMap& f);

}  // namespace qghost
