#pragma once

// The algebra R = KQ8 in Dade's presentation: generators x, y subject to
//   x^2 = yxy,  y^2 = xyx,  xy^2 = y^2x = x^2y = yx^2 = 0,
// with K-basis 1, x, y, xy, yx, xyx, yxy, xyxy (= yxyx).

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "qghost/qmod.hpp"

namespace qghost {

inline constexpr std::size_t kDadeDim = 8;
inline constexpr std::array<std::string_view, kDadeDim> kDadeWords = {
    "1", "x", "y", "xy", "yx", "xyx", "yxy", "xyxy"};

namespace dade {
inline constexpr std::size_t kOne = 0;
inline constexpr std::size_t kX = 1;
inline constexpr std::size_t kY = 2;
inline constexpr std::size_t kXY = 3;
inline constexpr std::size_t kYX = 4;
inline constexpr std::size_t kXYX = 5;
inline constexpr std::size_t kYXY = 6;
inline constexpr std::size_t kXYXY = 7;
/// Radical layer (Loewy degree) of each basis word.
inline constexpr std::array<int, kDadeDim> kLayer = {0, 1, 1, 2, 2, 3, 3, 4};
}  // namespace dade

/// Multiplication table of the basis words: every product of two basis words
/// is a single basis word or zero.
struct DadeBasis {
    std::array<std::string_view, kDadeDim> labels = kDadeWords;
    /// product[i][j] = index of word_i * word_j, or -1 for zero.
    std::array<std::array<int, kDadeDim>, kDadeDim> product{};

    /// Structure constant c_{ij}^k over the prime field (0 or 1).
    int tensor(std::size_t i, std::size_t j, std::size_t k) const {
        return product[i][j] == static_cast<int>(k) ? 1 : 0;
    }
};

/// Reduces an arbitrary word in x, y to a basis index (nullopt means zero).
std::optional<std::size_t> reduce_word(std::string_view w);

/// The multiplication table, computed once by word concatenation plus the
/// rewriting system x^2 -> yxy, y^2 -> xyx, kill xy^2, y^2x, x^2y, yx^2 and
/// all words of length >= 5, identify yxyx with xyxy.
const DadeBasis& structure_constants();

/// True iff the table is associative on all 512 basis triples.
bool check_associativity(const DadeBasis& b);

/// Left multiplication matrix of basis word i on R (8 x 8, over f).
Mat left_multiplication(const Field& f, std::size_t i);
/// Right multiplication matrix of basis word i on R.
Mat right_multiplication(const Field& f, std::size_t i);

/// R as a left module over itself.
QMod regular_module(const Field& f);
/// R (x) V for dim V = n: actions X_R (x) Id_V, Y_R (x) Id_V. Coordinate
/// index = word * n + k for basis element word (x) e_k.
QMod free_module(const Field& f, std::size_t n);
/// The trivial module K (x = y = 0).
QMod trivial_module(const Field& f);

/// Matrix of the element sum_w coeffs[w] * word_w acting on m.
Mat act(const QMod& m, const std::array<Elem, kDadeDim>& coeffs);

/// Dual basis for the Frobenius form (r, s) -> coefficient of xyxy in r*s:
/// column w of the result is the element w' with eps(word_v * w') = delta_vw.
Mat frobenius_dual_basis(const Field& f);

/// Left regular representation of Q8 by 8 x 8 permutation matrices (elements
/// ordered 1, i, j, k, -1, -i, -j, -k with k = ij).
std::pair<Mat, Mat> q8_regular_representation(const Field& f);

/// Dade's generators from a representation of Q8:
/// X = w I + w' J + I J, Y = w' I + w J + I J with {w, w'} the primitive cube
/// roots of unity. Requires F4 inside the field (even degree) and the Q8
/// relations I^4 = 1, I^2 = J^2, J I J^-1 = I^-1.
std::pair<Mat, Mat> from_group_generators(const Mat& i, const Mat& j, const Field& f);

/// The image of the F4 generator omega in f (f must have even degree).
Elem omega(const Field& f);

}  // namespace qghost
