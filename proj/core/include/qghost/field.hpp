#pragma once

// Arithmetic in GF(2^k), 1 <= k <= 16.
//
// An element is the bitmask of its residue polynomial modulo the field's
// modulus (bit i = coefficient of X^i). Fields are interned: two Field
// handles built from the same (k, modulus) share one table set, so equality
// is pointer equality and copies are cheap.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qghost {

using Elem = std::uint16_t;

namespace detail {
struct FieldData;
}

class Field {
public:
    static constexpr unsigned kMaxDegree = 16;

    /// Validated field with an explicit modulus (degree-k polynomial over GF(2)
    /// as a bitmask including the X^k bit). Throws PreconditionError when the
    /// degree is out of range, the modulus has the wrong degree, or it is
    /// reducible.
    static Field make(unsigned k, std::uint32_t modulus);
    /// Field of degree k with the documented default modulus.
    static Field make(unsigned k);

    static Field gf2() { return make(1); }
    static Field f4() { return make(2); }

    /// Default modulus table (index = degree).
    static std::uint32_t default_modulus(unsigned k);

    unsigned degree() const;
    std::uint32_t modulus() const;
    /// Number of elements, 2^k.
    std::uint32_t order() const;
    /// A fixed primitive element (generator of the multiplicative group).
    Elem generator() const;

    Elem add(Elem a, Elem b) const { return static_cast<Elem>(a ^ b); }
    Elem sub(Elem a, Elem b) const { return static_cast<Elem>(a ^ b); }
    Elem mul(Elem a, Elem b) const;
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t e) const;
    Elem square(Elem a) const { return mul(a, a); }
    /// Multiplicative order of a nonzero element.
    std::uint32_t multiplicative_order(Elem a) const;
    bool contains(Elem a) const { return a < order(); }

    /// Header text used by the matrix file format: "field 2^k modulus=<hex>".
    std::string header() const;
    /// Short label such as "GF(2^2)".
    std::string name() const;

    bool operator==(const Field& other) const { return data_ == other.data_; }
    bool operator!=(const Field& other) const { return data_ != other.data_; }

    const detail::FieldData& data() const { return *data_; }

private:
    explicit Field(std::shared_ptr<const detail::FieldData> d) : data_(std::move(d)) {}
    std::shared_ptr<const detail::FieldData> data_;
};

/// A scalar of a specific field. Convenient for tests and the public API;
/// matrix kernels work on raw Elem values instead.
class FieldElement {
public:
    FieldElement(Field f, Elem v);

    const Field& field() const { return field_; }
    Elem value() const { return value_; }
    bool is_zero() const { return value_ == 0; }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const { return *this + o; }
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement inverse() const;
    FieldElement pow(std::uint64_t e) const;

    bool operator==(const FieldElement& o) const {
        return field_ == o.field_ && value_ == o.value_;
    }

private:
    Field field_;
    Elem value_;
};

/// Ring embedding src -> dst for deg(src) | deg(dst), together with a
/// src-linear retraction dst -> src (the splitting used to descend results
/// computed over an extension back to the base field).
class FieldEmbedding {
public:
    const Field& source() const { return src_; }
    const Field& target() const { return dst_; }

    Elem operator()(Elem a) const { return table_[a]; }
    /// Preimage of an element lying in the embedded subfield.
    std::optional<Elem> preimage(Elem b) const;
    /// Source-linear map pi with pi(embed(a)) = a.
    Elem retract(Elem b) const;
    bool is_identity() const { return src_ == dst_; }

private:
    friend FieldEmbedding field_embed(const Field&, const Field&);
    Field src_;
    Field dst_;
    std::vector<Elem> table_;
    std::vector<std::int32_t> inverse_;
    Elem trace_scale_ = 1;
    FieldEmbedding(Field s, Field d) : src_(std::move(s)), dst_(std::move(d)) {}
};

/// Embedding of src into dst. The image of X is the numerically smallest root
/// of src's modulus in dst, so the result is deterministic.
/// Throws PreconditionError when deg(src) does not divide deg(dst).
FieldEmbedding field_embed(const Field& src, const Field& dst);

/// True if the GF(2) polynomial (bitmask) is irreducible over GF(2).
bool gf2_poly_irreducible(std::uint32_t poly);

}  // namespace qghost
