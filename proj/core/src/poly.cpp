#include "qghost/poly.hpp"

#include <algorithm>
#include <sstream>

#include "qghost/error.hpp"
#include "qghost/matrix.hpp"

namespace qghost {

namespace {

// Trial division only makes sense at desk scale.
constexpr std::uint64_t kMaxTrialCandidates = std::uint64_t{1} << 22;

}  // namespace

Poly::Poly(Field f, std::vector<Elem> coeffs) : field_(std::move(f)), c_(std::move(coeffs)) {
    for (Elem e : c_)
        if (!field_.contains(e)) throw PreconditionError("coefficient outside " + field_.name());
    trim();
}

Poly Poly::constant(Field f, Elem c) { return Poly(std::move(f), {c}); }
Poly Poly::x(Field f) { return Poly(std::move(f), {0, 1}); }
Poly Poly::linear(Field f, Elem c) { return Poly(std::move(f), {c, 1}); }

Poly Poly::from_gf2_mask(Field f, std::uint32_t mask) {
    std::vector<Elem> c;
    for (unsigned i = 0; (mask >> i) != 0; ++i) c.push_back(static_cast<Elem>((mask >> i) & 1u));
    return Poly(std::move(f), std::move(c));
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::monic() const {
    if (is_zero()) throw PreconditionError("zero polynomial has no monic associate");
    return scaled(field_.inv(lead()));
}

Poly Poly::operator+(const Poly& o) const {
    if (field_ != o.field_) throw ShapeError("polynomials over different fields");
    std::vector<Elem> c(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] = c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) c[i] ^= o.c_[i];
    return Poly(field_, std::move(c));
}

Poly Poly::operator*(const Poly& o) const {
    if (field_ != o.field_) throw ShapeError("polynomials over different fields");
    if (is_zero() || o.is_zero()) return Poly(field_);
    std::vector<Elem> c(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i]) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) c[i + j] ^= field_.mul(c_[i], o.c_[j]);
    }
    return Poly(field_, std::move(c));
}

Poly Poly::scaled(Elem s) const {
    std::vector<Elem> c(c_);
    for (auto& e : c) e = field_.mul(e, s);
    return Poly(field_, std::move(c));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
    if (field_ != d.field_) throw ShapeError("polynomials over different fields");
    if (d.is_zero()) throw PreconditionError("polynomial division by zero");
    std::vector<Elem> r = c_;
    const int dd = d.degree();
    if (degree() < dd) return {Poly(field_), *this};
    std::vector<Elem> q(static_cast<std::size_t>(degree() - dd + 1), 0);
    const Elem li = field_.inv(d.lead());
    for (int i = degree(); i >= dd; --i) {
        const Elem t = field_.mul(r[static_cast<std::size_t>(i)], li);
        if (!t) continue;
        q[static_cast<std::size_t>(i - dd)] = t;
        for (int j = 0; j <= dd; ++j)
            r[static_cast<std::size_t>(i - dd + j)] ^= field_.mul(t, d.c_[static_cast<std::size_t>(j)]);
    }
    return {Poly(field_, std::move(q)), Poly(field_, std::move(r))};
}

Poly Poly::pow(unsigned e) const {
    Poly result = constant(field_, 1);
    Poly base = *this;
    while (e) {
        if (e & 1u) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

Elem Poly::eval(Elem at) const {
    Elem acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = field_.add(field_.mul(acc, at), *it);
    return acc;
}

Mat Poly::eval(const Mat& a) const {
    if (!a.is_square()) throw ShapeError("polynomial of a non-square matrix");
    if (a.field() != field_) throw ShapeError("polynomial and matrix over different fields");
    Mat acc(field_, a.rows(), a.cols());
    const Mat id = Mat::identity(field_, a.rows());
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * a + id.scaled(*it);
    return acc;
}

std::string Poly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Elem c = c_[static_cast<std::size_t>(i)];
        if (!c) continue;
        if (!first) os << " + ";
        first = false;
        const bool unit = c == 1;
        if (i == 0) {
            os << std::hex << c << std::dec;
            continue;
        }
        if (!unit) os << std::hex << c << std::dec << "*";
        os << "X";
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

std::vector<PolyFactor> poly_factor(const Poly& p) {
    if (p.is_zero()) throw PreconditionError("cannot factor the zero polynomial");
    const Field& f = p.field();
    std::vector<PolyFactor> out;
    Poly rest = p.monic();
    const std::uint64_t q = f.order();
    for (int d = 1; 2 * d <= rest.degree(); ++d) {
        std::uint64_t count = 1;
        for (int i = 0; i < d; ++i) {
            count *= q;
            if (count > kMaxTrialCandidates)
                throw PreconditionError("poly_factor: trial division beyond desk scale");
        }
        // Every monic candidate of degree d; after removing all lower-degree
        // factors, any divisor found here is irreducible.
        std::vector<Elem> c(static_cast<std::size_t>(d) + 1, 0);
        c[static_cast<std::size_t>(d)] = 1;
        for (std::uint64_t idx = 0; idx < count && 2 * d <= rest.degree(); ++idx) {
            std::uint64_t t = idx;
            for (int i = 0; i < d; ++i) {
                c[static_cast<std::size_t>(i)] = static_cast<Elem>(t % q);
                t /= q;
            }
            Poly cand(f, c);
            unsigned mult = 0;
            for (;;) {
                auto [quo, rem] = rest.divmod(cand);
                if (!rem.is_zero()) break;
                rest = quo;
                ++mult;
            }
            if (mult) out.push_back({cand, mult});
        }
    }
    if (rest.degree() > 0) {
        bool merged = false;
        for (auto& pf : out)
            if (pf.factor == rest) {
                ++pf.multiplicity;
                merged = true;
            }
        if (!merged) out.push_back({rest, 1});
    }
    std::sort(out.begin(), out.end(), [](const PolyFactor& a, const PolyFactor& b) {
        if (a.factor.degree() != b.factor.degree()) return a.factor.degree() < b.factor.degree();
        return a.factor.coeffs() < b.factor.coeffs();
    });
    return out;
}

bool is_irreducible(const Poly& p) {
    if (p.degree() < 1) return false;
    auto fs = poly_factor(p);
    return fs.size() == 1 && fs.front().multiplicity == 1;
}

std::vector<Elem> poly_roots(const Poly& p) {
    if (p.is_zero()) throw PreconditionError("every element is a root of the zero polynomial");
    std::vector<Elem> roots;
    for (std::uint32_t z = 0; z < p.field().order(); ++z)
        if (p.eval(static_cast<Elem>(z)) == 0) roots.push_back(static_cast<Elem>(z));
    return roots;
}

Poly char_poly(const Mat& a) {
    if (!a.is_square()) throw ShapeError("char_poly of a non-square matrix");
    const Field& f = a.field();
    const std::size_t n = a.rows();
    Mat h = a;
    // Similarity reduction to upper Hessenberg form.
    for (std::size_t m = 1; m + 1 < n; ++m) {
        std::size_t piv = m;
        while (piv < n && h(piv, m - 1) == 0) ++piv;
        if (piv == n) continue;
        if (piv != m) {
            for (std::size_t k = 0; k < n; ++k) std::swap(h(piv, k), h(m, k));
            for (std::size_t k = 0; k < n; ++k) std::swap(h(k, piv), h(k, m));
        }
        const Elem inv = f.inv(h(m, m - 1));
        for (std::size_t i = m + 1; i < n; ++i) {
            const Elem u = f.mul(h(i, m - 1), inv);
            if (!u) continue;
            for (std::size_t k = 0; k < n; ++k) h(i, k) = f.add(h(i, k), f.mul(u, h(m, k)));
            for (std::size_t k = 0; k < n; ++k) h(k, m) = f.add(h(k, m), f.mul(u, h(k, i)));
        }
    }
    // p_m = (X - h_mm) p_{m-1} - sum_i h_im * prod_{j=i+1..m} h_{j,j-1} * p_{i-1}
    std::vector<Poly> p;
    p.push_back(Poly::constant(f, 1));
    for (std::size_t m = 1; m <= n; ++m) {
        Poly pm = Poly::linear(f, h(m - 1, m - 1)) * p[m - 1];
        Elem t = 1;
        for (std::size_t i = m - 1; i >= 1; --i) {
            t = f.mul(t, h(i, i - 1));
            const Elem coef = f.mul(t, h(i - 1, m - 1));
            if (coef) pm = pm + p[i - 1].scaled(coef);
        }
        p.push_back(std::move(pm));
    }
    return p[n];
}

Mat companion(const Poly& p) {
    if (!p.is_monic()) throw PreconditionError("companion matrix needs a monic polynomial");
    const auto n = static_cast<std::size_t>(p.degree());
    Mat c(p.field(), n, n);
    for (std::size_t i = 1; i < n; ++i) c(i, i - 1) = 1;
    for (std::size_t i = 0; i < n; ++i) c(i, n - 1) = p.coeff(i);  // -a_i = a_i in char 2
    return c;
}

}  // namespace qghost
