#include "qghost/field.hpp"

#include <array>
#include <map>
#include <mutex>
#include <sstream>

#include "qghost/error.hpp"

namespace qghost {

namespace detail {

struct FieldData {
    unsigned degree = 0;
    std::uint32_t modulus = 0;
    std::uint32_t order = 0;
    Elem generator = 1;
    // log_[a] for a != 0; exp_ has length 2*(order-1) so log sums need no reduction.
    std::vector<std::uint32_t> log_;
    std::vector<Elem> exp_;
};

}  // namespace detail

namespace {

// Conway polynomials for GF(2^k); each is primitive.
constexpr std::array<std::uint32_t, 17> kDefaultModuli = {
    0,       0x3,     0x7,     0xb,     0x13,    0x25,    0x5b,    0x83,   0x11d,
    0x211,   0x46f,   0x805,   0x10eb,  0x201b,  0x40a9,  0x8035,  0x1002d,
};

int bit_degree(std::uint64_t p) {
    int d = -1;
    while (p) {
        p >>= 1;
        ++d;
    }
    return d;
}

std::uint64_t gf2_mod(std::uint64_t a, std::uint64_t m) {
    const int dm = bit_degree(m);
    for (int da = bit_degree(a); da >= dm; da = bit_degree(a)) a ^= m << (da - dm);
    return a;
}

std::uint32_t clmul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t m, unsigned k) {
    std::uint32_t r = 0;
    while (b) {
        if (b & 1u) r ^= a;
        b >>= 1;
        a <<= 1;
        if ((a >> k) & 1u) a ^= m;
    }
    return r;
}

std::shared_ptr<const detail::FieldData> build(unsigned k, std::uint32_t modulus) {
    auto d = std::make_shared<detail::FieldData>();
    d->degree = k;
    d->modulus = modulus;
    d->order = 1u << k;
    const std::uint32_t n = d->order - 1;

    // Smallest primitive element.
    Elem gen = 1;
    if (k > 1) {
        std::vector<std::uint32_t> primes;
        std::uint32_t t = n;
        for (std::uint32_t p = 2; p * p <= t; ++p) {
            if (t % p == 0) {
                primes.push_back(p);
                while (t % p == 0) t /= p;
            }
        }
        if (t > 1) primes.push_back(t);
        auto powm = [&](std::uint32_t a, std::uint32_t e) {
            std::uint32_t r = 1;
            while (e) {
                if (e & 1u) r = clmul_mod(r, a, modulus, k);
                a = clmul_mod(a, a, modulus, k);
                e >>= 1;
            }
            return r;
        };
        for (std::uint32_t g = 2; g <= n; ++g) {
            bool primitive = true;
            for (auto p : primes) {
                if (powm(g, n / p) == 1) {
                    primitive = false;
                    break;
                }
            }
            if (primitive) {
                gen = static_cast<Elem>(g);
                break;
            }
        }
    }
    d->generator = gen;
    d->log_.assign(d->order, 0);
    d->exp_.assign(2 * static_cast<std::size_t>(n), 0);
    std::uint32_t x = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        d->exp_[i] = static_cast<Elem>(x);
        d->exp_[i + n] = static_cast<Elem>(x);
        d->log_[x] = i;
        x = clmul_mod(x, gen, modulus, k);
    }
    if (x != 1) throw InvariantError("field table construction: generator order mismatch");
    return d;
}

std::mutex& registry_mutex() {
    static std::mutex m;
    return m;
}

std::map<std::pair<unsigned, std::uint32_t>, std::shared_ptr<const detail::FieldData>>&
registry() {
    static std::map<std::pair<unsigned, std::uint32_t>, std::shared_ptr<const detail::FieldData>> r;
    return r;
}

}  // namespace

bool gf2_poly_irreducible(std::uint32_t poly) {
    const int d = bit_degree(poly);
    if (d <= 0) return false;
    if (d == 1) return true;
    for (std::uint64_t q = 2; bit_degree(q) <= d / 2; ++q) {
        if (gf2_mod(poly, q) == 0) return false;
    }
    return true;
}

std::uint32_t Field::default_modulus(unsigned k) {
    if (k < 1 || k > kMaxDegree) throw PreconditionError("field degree must lie in [1, 16]");
    return kDefaultModuli[k];
}

Field Field::make(unsigned k) { return make(k, default_modulus(k)); }

Field Field::make(unsigned k, std::uint32_t modulus) {
    if (k < 1 || k > kMaxDegree) throw PreconditionError("field degree must lie in [1, 16]");
    if (bit_degree(modulus) != static_cast<int>(k))
        throw PreconditionError("modulus degree does not match field degree");
    if (!gf2_poly_irreducible(modulus)) throw PreconditionError("modulus is reducible over GF(2)");
    std::lock_guard lock(registry_mutex());
    auto& r = registry();
    auto key = std::make_pair(k, modulus);
    auto it = r.find(key);
    if (it == r.end()) it = r.emplace(key, build(k, modulus)).first;
    return Field(it->second);
}

unsigned Field::degree() const { return data_->degree; }
std::uint32_t Field::modulus() const { return data_->modulus; }
std::uint32_t Field::order() const { return data_->order; }
Elem Field::generator() const { return data_->generator; }

Elem Field::mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    const auto& d = *data_;
    return d.exp_[d.log_[a] + d.log_[b]];
}

Elem Field::inv(Elem a) const {
    if (a == 0) throw PreconditionError("division by zero in " + name());
    const auto& d = *data_;
    const std::uint32_t n = d.order - 1;
    return d.exp_[(n - d.log_[a]) % n];
}

Elem Field::pow(Elem a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    const auto& d = *data_;
    const std::uint64_t n = d.order - 1;
    return d.exp_[static_cast<std::size_t>((d.log_[a] * (e % n)) % n)];
}

std::uint32_t Field::multiplicative_order(Elem a) const {
    if (a == 0) throw PreconditionError("zero has no multiplicative order");
    const std::uint32_t n = order() - 1;
    std::uint32_t best = n;
    for (std::uint32_t dv = 1; dv <= n; ++dv) {
        if (n % dv == 0 && pow(a, dv) == 1) {
            best = dv;
            break;
        }
    }
    return best;
}

std::string Field::header() const {
    std::ostringstream os;
    os << "field 2^" << degree() << " modulus=" << std::hex << modulus();
    return os.str();
}

std::string Field::name() const { return "GF(2^" + std::to_string(degree()) + ")"; }

FieldElement::FieldElement(Field f, Elem v) : field_(std::move(f)), value_(v) {
    if (!field_.contains(v)) throw PreconditionError("element out of range for " + field_.name());
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    if (field_ != o.field_) throw ShapeError("mixed fields");
    return {field_, field_.add(value_, o.value_)};
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    if (field_ != o.field_) throw ShapeError("mixed fields");
    return {field_, field_.mul(value_, o.value_)};
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
    if (field_ != o.field_) throw ShapeError("mixed fields");
    return {field_, field_.div(value_, o.value_)};
}

FieldElement FieldElement::inverse() const { return {field_, field_.inv(value_)}; }
FieldElement FieldElement::pow(std::uint64_t e) const { return {field_, field_.pow(value_, e)}; }

std::optional<Elem> FieldEmbedding::preimage(Elem b) const {
    if (b >= inverse_.size() || inverse_[b] < 0) return std::nullopt;
    return static_cast<Elem>(inverse_[b]);
}

Elem FieldEmbedding::retract(Elem b) const {
    if (is_identity()) return b;
    // Tr_{dst/src}(c*b) with Tr(c) = 1 is src-linear and fixes the subfield.
    const unsigned ks = src_.degree();
    const unsigned m = dst_.degree() / ks;
    Elem z = dst_.mul(trace_scale_, b);
    Elem acc = 0;
    for (unsigned i = 0; i < m; ++i) {
        acc = dst_.add(acc, z);
        for (unsigned s = 0; s < ks; ++s) z = dst_.square(z);
    }
    auto pre = preimage(acc);
    if (!pre) throw InvariantError("relative trace left the subfield");
    return *pre;
}

FieldEmbedding field_embed(const Field& src, const Field& dst) {
    const unsigned ks = src.degree();
    const unsigned kd = dst.degree();
    if (kd % ks != 0)
        throw PreconditionError("cannot embed " + src.name() + " into " + dst.name());
    FieldEmbedding e(src, dst);
    e.table_.resize(src.order());
    e.inverse_.assign(dst.order(), -1);
    if (src == dst) {
        for (std::uint32_t a = 0; a < src.order(); ++a) {
            e.table_[a] = static_cast<Elem>(a);
            e.inverse_[a] = static_cast<std::int32_t>(a);
        }
        return e;
    }
    // Root of src's modulus in dst.
    Elem root = 0;
    bool found = false;
    for (std::uint32_t z = 0; z < dst.order() && !found; ++z) {
        Elem acc = 0;
        for (int i = static_cast<int>(ks); i >= 0; --i) {
            acc = dst.mul(acc, static_cast<Elem>(z));
            if ((src.modulus() >> i) & 1u) acc = dst.add(acc, 1);
        }
        if (acc == 0) {
            root = static_cast<Elem>(z);
            found = true;
        }
    }
    if (!found) throw InvariantError("no root of source modulus in target field");
    std::vector<Elem> powers(ks);
    Elem p = 1;
    for (unsigned i = 0; i < ks; ++i) {
        powers[i] = p;
        p = dst.mul(p, root);
    }
    for (std::uint32_t a = 0; a < src.order(); ++a) {
        Elem img = 0;
        for (unsigned i = 0; i < ks; ++i)
            if ((a >> i) & 1u) img = dst.add(img, powers[i]);
        e.table_[a] = img;
        e.inverse_[img] = static_cast<std::int32_t>(a);
    }
    // Smallest c with Tr_{dst/src}(c) = 1.
    const unsigned m = kd / ks;
    for (std::uint32_t c = 1; c < dst.order(); ++c) {
        Elem z = static_cast<Elem>(c);
        Elem acc = 0;
        for (unsigned i = 0; i < m; ++i) {
            acc = dst.add(acc, z);
            for (unsigned s = 0; s < ks; ++s) z = dst.square(z);
        }
        if (acc == 1) {
            e.trace_scale_ = static_cast<Elem>(c);
            break;
        }
    }
    return e;
}

}  // namespace qghost
