#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qghost/field.hpp"

namespace qghost {

class Mat;

/// Univariate polynomial over a GF(2^k); coefficients stored low degree first
/// and kept trimmed (the zero polynomial has no coefficients).
class Poly {
public:
    explicit Poly(Field f) : field_(std::move(f)) {}
    Poly(Field f, std::vector<Elem> coeffs);

    static Poly constant(Field f, Elem c);
    static Poly x(Field f);
    /// X - c (= X + c in characteristic two).
    static Poly linear(Field f, Elem c);
    /// Polynomial over GF(2^k) whose coefficients are the bits of `mask`.
    static Poly from_gf2_mask(Field f, std::uint32_t mask);

    const Field& field() const { return field_; }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Elem{0}; }
    Elem lead() const { return c_.empty() ? Elem{0} : c_.back(); }
    const std::vector<Elem>& coeffs() const { return c_; }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    Poly monic() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const { return *this + o; }
    Poly operator*(const Poly& o) const;
    Poly scaled(Elem s) const;
    /// Quotient and remainder.
    std::pair<Poly, Poly> divmod(const Poly& d) const;
    Poly operator%(const Poly& d) const { return divmod(d).second; }
    Poly operator/(const Poly& d) const { return divmod(d).first; }
    Poly pow(unsigned e) const;
    Elem eval(Elem at) const;
    /// p(A) for a square matrix A.
    Mat eval(const Mat& a) const;

    bool operator==(const Poly& o) const { return field_ == o.field_ && c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    /// Human-readable form, e.g. "X^2 + X + 1" (non-unit coefficients in hex).
    std::string to_string() const;

private:
    void trim();
    Field field_;
    std::vector<Elem> c_;
};

Poly gcd(Poly a, Poly b);

struct PolyFactor {
    Poly factor;  // monic irreducible
    unsigned multiplicity;
};

/// Factorization into monic irreducibles by trial division, factors ordered by
/// (degree, coefficient list). Throws PreconditionError for the zero
/// polynomial. The product of the factors times lead() equals p.
std::vector<PolyFactor> poly_factor(const Poly& p);
bool is_irreducible(const Poly& p);

/// All roots lying in the coefficient field, ascending.
std::vector<Elem> poly_roots(const Poly& p);

/// Characteristic polynomial det(X*I - A) via Hessenberg reduction.
Poly char_poly(const Mat& a);

/// Companion matrix of a monic polynomial: the basis e1, e2 = A e1, ... is cyclic.
Mat companion(const Poly& p);

}  // namespace qghost
