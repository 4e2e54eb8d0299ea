#include "qghost/dade.hpp"

#include <string>

#include "qghost/error.hpp"

namespace qghost {

std::optional<std::size_t> reduce_word(std::string_view word) {
    std::string w(word == "1" ? std::string_view{} : word);
    for (;;) {
        if (w.size() >= 5) return std::nullopt;
        for (const char* dead : {"xyy", "yyx", "xxy", "yxx"})
            if (w.find(dead) != std::string::npos) return std::nullopt;
        if (auto p = w.find("xx"); p != std::string::npos) {
            w.replace(p, 2, "yxy");
            continue;
        }
        if (auto p = w.find("yy"); p != std::string::npos) {
            w.replace(p, 2, "xyx");
            continue;
        }
        break;
    }
    if (w == "yxyx") w = "xyxy";
    if (w.empty()) return dade::kOne;
    for (std::size_t i = 1; i < kDadeDim; ++i)
        if (kDadeWords[i] == w) return i;
    throw InvariantError("word reduction produced a non-basis word: " + w);
}

const DadeBasis& structure_constants() {
    static const DadeBasis table = [] {
        DadeBasis b;
        for (std::size_t i = 0; i < kDadeDim; ++i)
            for (std::size_t j = 0; j < kDadeDim; ++j) {
                std::string w;
                if (i != dade::kOne) w += kDadeWords[i];
                if (j != dade::kOne) w += kDadeWords[j];
                auto r = reduce_word(w.empty() ? std::string_view("1") : std::string_view(w));
                b.product[i][j] = r ? static_cast<int>(*r) : -1;
            }
        return b;
    }();
    return table;
}

bool check_associativity(const DadeBasis& b) {
    auto mul = [&](int i, int j) -> int {
        if (i < 0 || j < 0) return -1;
        return b.product[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    };
    for (int i = 0; i < static_cast<int>(kDadeDim); ++i)
        for (int j = 0; j < static_cast<int>(kDadeDim); ++j)
            for (int k = 0; k < static_cast<int>(kDadeDim); ++k)
                if (mul(mul(i, j), k) != mul(i, mul(j, k))) return false;
    return true;
}

Mat left_multiplication(const Field& f, std::size_t i) {
    const auto& b = structure_constants();
    Mat m(f, kDadeDim, kDadeDim);
    for (std::size_t j = 0; j < kDadeDim; ++j)
        if (int p = b.product[i][j]; p >= 0) m(static_cast<std::size_t>(p), j) = 1;
    return m;
}

Mat right_multiplication(const Field& f, std::size_t i) {
    const auto& b = structure_constants();
    Mat m(f, kDadeDim, kDadeDim);
    for (std::size_t j = 0; j < kDadeDim; ++j)
        if (int p = b.product[j][i]; p >= 0) m(static_cast<std::size_t>(p), j) = 1;
    return m;
}

QMod regular_module(const Field& f) {
    return QMod(left_multiplication(f, dade::kX), left_multiplication(f, dade::kY));
}

QMod free_module(const Field& f, std::size_t n) {
    const Mat id = Mat::identity(f, n);
    return QMod(Mat::kron(left_multiplication(f, dade::kX), id),
                Mat::kron(left_multiplication(f, dade::kY), id));
}

QMod trivial_module(const Field& f) { return QMod(Mat(f, 1, 1), Mat(f, 1, 1)); }

Mat act(const QMod& m, const std::array<Elem, kDadeDim>& coeffs) {
    Mat acc(m.field(), m.dim(), m.dim());
    for (std::size_t w = 0; w < kDadeDim; ++w)
        if (coeffs[w]) acc = acc + m.basis_word(w).scaled(coeffs[w]);
    return acc;
}

Mat frobenius_dual_basis(const Field& f) {
    const auto& b = structure_constants();
    // gram(v, w) = eps(word_v * word_w)
    Mat gram(f, kDadeDim, kDadeDim);
    for (std::size_t v = 0; v < kDadeDim; ++v)
        for (std::size_t w = 0; w < kDadeDim; ++w)
            gram(v, w) = b.product[v][w] == static_cast<int>(dade::kXYXY) ? 1 : 0;
    auto inv = inverse(gram);
    if (!inv) throw InvariantError("Frobenius form is degenerate");
    return *inv;
}

std::pair<Mat, Mat> q8_regular_representation(const Field& f) {
    // unit products among {1, i, j, k}: (sign, unit)
    static constexpr int kUnitSign[4][4] = {
        {0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    static constexpr int kUnitProd[4][4] = {
        {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    auto mul = [](int g, int h) {
        const int sg = g / 4, ug = g % 4, sh = h / 4, uh = h % 4;
        const int s = (sg + sh + kUnitSign[ug][uh]) % 2;
        return 4 * s + kUnitProd[ug][uh];
    };
    auto left = [&](int g) {
        Mat m(f, 8, 8);
        for (int h = 0; h < 8; ++h) m(static_cast<std::size_t>(mul(g, h)), static_cast<std::size_t>(h)) = 1;
        return m;
    };
    return {left(1), left(2)};
}

Elem omega(const Field& f) {
    if (f.degree() % 2 != 0)
        throw PreconditionError(f.name() + " does not contain F4 (odd degree)");
    return field_embed(Field::f4(), f)(2);
}

std::pair<Mat, Mat> from_group_generators(const Mat& i, const Mat& j, const Field& f) {
    const Elem w = omega(f);
    if (i.field() != f || j.field() != f) throw ShapeError("generators must be over the given field");
    if (!i.is_square() || !j.is_square() || i.rows() != j.rows())
        throw ShapeError("group generators must be square of equal size");
    const std::size_t n = i.rows();
    const Mat id = Mat::identity(f, n);
    auto iinv = inverse(i);
    auto jinv = inverse(j);
    if (!iinv || !jinv) throw PreconditionError("group generators must be invertible");
    const Mat i2 = i * i;
    if (!(i2 * i2 == id)) throw PreconditionError("Q8 relation I^4 = 1 violated");
    if (!(i2 == j * j)) throw PreconditionError("Q8 relation I^2 = J^2 violated");
    if (!(j * i * *jinv == *iinv)) throw PreconditionError("Q8 relation J I J^-1 = I^-1 violated");
    const Elem wbar = f.add(w, 1);
    const Mat ij = i * j;
    return {i.scaled(w) + j.scaled(wbar) + ij, i.scaled(wbar) + j.scaled(w) + ij};
}

}  // namespace qghost
