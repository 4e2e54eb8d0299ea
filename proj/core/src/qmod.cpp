#include "qghost/qmod.hpp"

#include "qghost/dade.hpp"
#include "qghost/error.hpp"

namespace qghost {

QMod::QMod(Mat x, Mat y) : x_(std::move(x)), y_(std::move(y)) {
    if (!x_.is_square() || !y_.is_square() || x_.rows() != y_.rows())
        throw ShapeError("module actions must be square matrices of equal size");
    if (x_.field() != y_.field()) throw ShapeError("module actions over different fields");
}

QMod::QMod(Field f) : x_(f, 0, 0), y_(f, 0, 0) {}

Mat QMod::word(std::string_view w) const {
    Mat acc = Mat::identity(field(), dim());
    if (w == "1") return acc;
    for (char c : w) {
        if (c == 'x')
            acc = acc * x_;
        else if (c == 'y')
            acc = acc * y_;
        else
            throw PreconditionError("words are spelled with x and y only");
    }
    return acc;
}

Mat QMod::basis_word(std::size_t i) const { return word(kDadeWords.at(i)); }

ModMap::ModMap(QMod source, QMod target, Mat matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != target_.dim() || matrix_.cols() != source_.dim())
        throw ShapeError("map matrix shape does not match source/target dimensions");
    if (matrix_.field() != source_.field() || matrix_.field() != target_.field())
        throw ShapeError("map, source and target over different fields");
}

ModMap ModMap::zero(const QMod& source, const QMod& target) {
    return ModMap(source, target, Mat(source.field(), target.dim(), source.dim()));
}

ModMap ModMap::identity(const QMod& m) {
    return ModMap(m, m, Mat::identity(m.field(), m.dim()));
}

bool ModMap::is_homomorphism() const {
    return matrix_ * source_.x() == target_.x() * matrix_ &&
           matrix_ * source_.y() == target_.y() * matrix_;
}

ModMap compose(const ModMap& g, const ModMap& f) {
    if (!(f.target() == g.source())) throw ShapeError("compose: maps are not composable");
    return ModMap(f.source(), g.target(), g.matrix() * f.matrix());
}

}  // namespace qghost
