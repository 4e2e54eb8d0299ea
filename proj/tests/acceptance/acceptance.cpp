// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "qghost/campaign.hpp"
#include "qghost/io.hpp"
#include "qghost/kronecker.hpp"
#include "qghost/lift.hpp"
#include "qghost/stable.hpp"

using namespace qghost;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

Mat random_mat(const Field& f, std::size_t r, std::size_t c, Rng& rng) {
    Mat m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.element(f);
    return m;
}

Mat random_invertible(const Field& f, std::size_t n, Rng& rng) {
    for (;;) {
        Mat p = random_mat(f, n, n, rng);
        if (inverse(p)) return p;
    }
}

// ---- criterion 1 ----------------------------------------------------------

// Left regular representation of Q8 from quaternion arithmetic, independent of
// the library's table.
Mat quaternion_left(const Field& f, int letter) {
    static const int sgn[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    static const int let[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    Mat m(f, 8, 8);
    for (std::size_t c = 0; c < 8; ++c) {
        const int s = (c < 4 ? 1 : -1) * sgn[letter][c % 4];
        const int l = let[letter][c % 4];
        m(static_cast<std::size_t>(l + (s < 0 ? 4 : 0)), c) = 1;
    }
    return m;
}

Outcome algebra_fidelity() {
    const auto t0 = Clock::now();
    const DadeBasis& b = structure_constants();
    if (!check_associativity(b)) return {false, "table is not associative"};

    // products of the basis words evaluated on the group-generated free module
    const Field f4 = Field::f4();
    const auto [gx, gy] = from_group_generators(quaternion_left(f4, 1), quaternion_left(f4, 2), f4);
    const QMod g(gx, gy);
    std::vector<Mat> words;
    for (auto w : kDadeWords) words.push_back(g.word(w == "1" ? "" : w));
    Mat span(f4, 0, 64);
    for (const auto& w : words) span = Mat::vstack(span, Mat(f4, 1, 64, w.entries()));
    if (rank(span) != kDadeDim) return {false, "basis words are dependent in the group algebra"};
    std::size_t assoc = 0;
    for (std::size_t i = 0; i < kDadeDim; ++i)
        for (std::size_t j = 0; j < kDadeDim; ++j) {
            const Mat p = words[i] * words[j];
            const int k = b.product[i][j];
            if (k < 0 ? !p.is_zero() : p != words[static_cast<std::size_t>(k)])
                return {false, "product " + std::string(kDadeWords[i]) + "*" + std::string(kDadeWords[j]) + " disagrees"};
            for (std::size_t l = 0; l < kDadeDim; ++l) {
                const int ij = b.product[i][j], jl = b.product[j][l];
                const int left = ij < 0 ? -1 : b.product[static_cast<std::size_t>(ij)][l];
                const int right = jl < 0 ? -1 : b.product[i][static_cast<std::size_t>(jl)];
                assoc += left == right;
            }
        }
    if (assoc != 512) return {false, "associativity holds on " + std::to_string(assoc) + "/512 triples"};

    const QMod r = regular_module(Field::gf2());
    std::vector<std::size_t> layers;
    for (std::size_t n = 0; n < 5; ++n) layers.push_back(rad_n(r, n).dim() - rad_n(r, n + 1).dim());
    const std::vector<std::size_t> want = {1, 2, 2, 2, 1};
    if (layers != want) return {false, "radical layers differ"};
    const double s = seconds_since(t0);
    std::ostringstream os;
    os << "512/512 associative triples, layers 1,2,2,2,1, dim J/J^2 = " << layers[1] << ", dim J^2/J^3 = " << layers[2]
       << ", " << s << " s";
    return {s < 1.0, os.str()};
}

// ---- criterion 2 ----------------------------------------------------------

// Kernel of R^g -> M sending free generators to lifts of a basis of M / rad M.
QMod minimal_cover_kernel(const QMod& m) {
    const Field& f = m.field();
    const Mat tops = standard_complement(rad(m).basis);
    const std::size_t g = tops.rows();
    Mat cover(f, m.dim(), kDadeDim * g);
    for (std::size_t w = 0; w < kDadeDim; ++w) {
        const Mat act_w = m.basis_word(w);
        for (std::size_t k = 0; k < g; ++k) {
            const auto col = act_w.apply(tops.row(k));
            for (std::size_t r = 0; r < m.dim(); ++r) cover(r, w * g + k) = col[r];
        }
    }
    return restrict_module(free_module(f, g), row_space(kernel(cover)));
}

Outcome periodicity() {
    const auto t0 = Clock::now();
    std::ostringstream os;
    for (unsigned k : {1u, 2u}) {
        const Field f = Field::make(k);
        const PeriodicityCertificate c = verify_periodicity(f);
        QMod m = trivial_module(f);
        std::array<std::size_t, 5> oracle{};
        for (std::size_t n = 0; n < 5; ++n) {
            oracle[n] = m.dim();
            if (n < 4) m = minimal_cover_kernel(m);
        }
        const std::array<std::size_t, 5> want = {1, 7, 9, 7, 1};
        if (c.dims != want || oracle != want) return {false, "syzygy dimensions differ over " + f.name()};
        if (!c.iso.is_homomorphism() || !inverse(c.iso.matrix())) return {false, "certificate map is not an isomorphism"};
        const IsoResult iso = find_isomorphism(m, trivial_module(f), 7);
        if (iso.status != IsoResult::Status::Found) return {false, "oracle Omega^4 K not isomorphic to K"};
        os << f.name() << " dims 1,7,9,7,1 iso found; ";
    }
    const double s = seconds_since(t0);
    os << s << " s";
    return {s < 5.0, os.str()};
}

// ---- criterion 3 ----------------------------------------------------------

Outcome ghost_soundness() {
    const auto t0 = Clock::now();
    Rng rng(3003);
    std::size_t pairs = 0, basis_elems = 0, pf_checked = 0;
    for (std::size_t t = 0; pairs < 60; ++t) {
        const Field f = Field::make(t % 2 ? 2 : 1);
        const QMod m = strip_projectives(random_module(f, rng, 12)).projective_free;
        const QMod n = strip_projectives(random_module(f, rng, 12)).projective_free;
        if (m.dim() == 0 || n.dim() == 0) continue;
        ++pairs;
        const GhostSpace g = ghost_space(m, n);
        const Mat radn = rad(n).basis;
        const Mat socm = soc(m).basis;
        for (const auto& h : g.basis) {
            ++basis_elems;
            if (!is_ghost(h)) return {false, "basis element failed is_ghost"};
            if (!subspace_contains(radn, h.matrix().transpose())) return {false, "ghost image not in rad(N)"};
            if (socm.rows() && !(h.matrix() * socm.transpose()).is_zero()) return {false, "ghost does not kill soc(M)"};
            ++pf_checked;
        }
    }
    const double s = seconds_since(t0);
    std::ostringstream os;
    os << pairs << " projective-free pairs, " << basis_elems << " ghost basis maps, " << pf_checked
       << " checked for image and socle, " << s << " s";
    return {s < 120.0, os.str()};
}

// ---- criterion 4 ----------------------------------------------------------

using Signature = std::vector<std::tuple<std::string, std::size_t, std::string>>;

Signature signature(const KroneckerDecomposition& d) {
    Signature sig;
    for (const auto& x : d.summands)
        sig.emplace_back(std::string(case_name(x.kind)), x.n(), x.char_poly ? x.char_poly->to_string() : "");
    std::sort(sig.begin(), sig.end());
    return sig;
}

LinearRelation transport(const LinearRelation& rel, const Mat& p) {
    const std::size_t n = rel.n;
    Mat d(rel.field(), 2 * n, 2 * n);
    d.set_block(0, 0, p.transpose());
    d.set_block(n, n, p.transpose());
    return LinearRelation::make(n, rel.basis * d);
}

Outcome kronecker() {
    const auto t0 = Clock::now();
    Rng rng(4004);
    std::size_t instances = 0, decompositions = 0;
    for (std::size_t t = 0; t < 520; ++t) {
        const Field f = Field::make(t % 2 ? 2 : 1);
        const std::size_t n = rng.between(1, 6);
        const LinearRelation rel = LinearRelation::make(n, row_space(random_mat(f, rng.between(0, 2 * n), 2 * n, rng)));
        const KroneckerDecomposition d = decompose(rel);
        std::string why;
        if (!verify_decomposition(rel, d, &why)) return {false, "instance " + std::to_string(t) + ": " + why};
        const Signature sig = signature(d);
        for (int b = 0; b < 20; ++b) {
            const LinearRelation moved = transport(rel, random_invertible(f, n, rng));
            const KroneckerDecomposition dm = decompose(moved);
            if (!verify_decomposition(moved, dm, &why)) return {false, "moved instance " + std::to_string(t) + ": " + why};
            if (signature(dm) != sig) return {false, "summand multiset changed under a basis change, instance " + std::to_string(t)};
            ++decompositions;
        }
        ++instances;
    }
    const double s = seconds_since(t0);
    std::ostringstream os;
    os << instances << " relations over GF(2) and F4, " << decompositions << " basis changes, " << s << " s";
    return {s < 120.0, os.str()};
}

// ---- criterion 5 ----------------------------------------------------------

Outcome lower_bound(const std::filesystem::path& dir) {
    const auto t0 = Clock::now();
    const Field f = Field::gf2();
    LowerBoundConfig cfg;
    cfg.pool = default_pool(f);
    cfg.budget = std::chrono::milliseconds(600000);
    const LowerBoundResult r = lower_bound_search(cfg);
    if (!r.witness) return {false, "no witness within the budget"};
    const auto path = dir / "double-ghost-witness.txt";
    write_text_file(path, format_witness(*r.witness));
    const DoubleGhostWitness back = parse_witness(read_text_file(path));
    const bool ok = verify_double_ghost(back) && is_ghost(back.g1) && is_ghost(back.g2) &&
                    !stably_trivial(compose(back.g2, back.g1));
    std::ostringstream os;
    os << "witness dims " << back.m0.dim() << "," << back.m1.dim() << "," << back.m2.dim() << " after " << r.candidates
       << " candidates, re-verified from " << path.filename().string() << ", " << seconds_since(t0) << " s";
    return {ok, os.str()};
}

// ---- criterion 6 ----------------------------------------------------------

Outcome upper_bound() {
    const auto t0 = Clock::now();
    CampaignConfig cfg;
    cfg.trials = 200;
    cfg.max_dim = 12;
    cfg.field_degree = 1;
    cfg.seed = 1;
    const CampaignResult res = verify_theorem(cfg);
    std::size_t trivial = 0, agree = 0, nonzero = 0;
    for (const auto& t : res.trials) {
        trivial += t.passed();
        agree += t.agree();
        nonzero += t.nonzero;
    }
    const std::size_t ext = res.extension_trials();
    const double s = seconds_since(t0);
    std::ostringstream os;
    os << trivial << "/200 stably trivial, " << agree << "/200 oracle agreement, " << nonzero << " nonzero composites, "
       << ext << " trials needing a field extension, " << s << " s";
    return {trivial == 200 && agree == 200 && ext >= 10 && s < 900.0, os.str()};
}

// ---- criterion 7 ----------------------------------------------------------

Outcome lemma_checks() {
    Rng rng(7007);
    std::size_t radical_ok = 0;
    while (radical_ok < 100) {
        const Field f = Field::make(1 + static_cast<unsigned>(rng.below(3)));
        const QMod n = strip_projectives(random_module(f, rng, 16)).projective_free;
        const Mat r2 = rad_n(n, 2).basis;
        if (r2.rows() == 0) continue;
        std::array<Elem, kDadeDim> t{};
        t[dade::kX] = rng.nonzero_element(f);
        t[dade::kY] = rng.nonzero_element(f);
        for (std::size_t w = dade::kXY; w < kDadeDim; ++w) t[w] = rng.element(f);
        const Mat target = (random_mat(f, 1, r2.rows(), rng) * r2).transpose();
        const Mat m = solve_in_radical(n, t, target);
        if (act(n, t) * m != target || !subspace_contains(rad(n).basis, m.transpose()))
            return {false, "solve_in_radical returned a wrong solution"};
        ++radical_ok;
    }

    std::size_t leading_ok = 0, leading_nonzero = 0;
    CampaignConfig cfg;
    // nonzero composites first, then the rest
    for (std::size_t idx = 0; leading_ok < 100 && idx < 2000; ++idx) {
        const std::size_t i = idx % 1000;
        const TrialInstance inst = sample_trial(cfg, i);
        const ModMap f = inst.triple.composite();
        if (f.is_zero() == (idx < 1000)) continue;
        const ModMap iota = inst.iota ? *inst.iota : injective_embedding(f.source()).iota;
        const std::size_t n = iota.target().dim() / kDadeDim;
        std::size_t per_trial = 0;
        for (Letter letter : {Letter::X, Letter::Y}) {
            const std::size_t other = letter == Letter::X ? 2 * n : n;
            Mat sel(f.field(), 2 * n, iota.target().dim());
            for (std::size_t c = 0; c < n; ++c) {
                sel(c, c) = 1;
                sel(n + c, other + c) = 1;
            }
            const Mat ms = kernel(sel * iota.matrix());
            for (std::size_t r = 0; r < ms.rows() && per_trial < 8; ++r) {
                const Mat m = ms.block(r, 0, 1, ms.cols()).transpose();
                // skip elements of soc^3, whose leading term vanishes
                if ((iota.matrix() * m).block(0, 0, 3 * n, 1).is_zero()) continue;
                const auto sol = solve_leading(f, iota.matrix(), m, letter);
                if (!sol) return {false, "solve_leading found no solution on trial " + std::to_string(i)};
                const Mat w = f.target().basis_word(letter == Letter::X ? dade::kXYX : dade::kYXY);
                if (w * *sol != f.matrix() * m) return {false, "solve_leading returned a wrong solution"};
                leading_nonzero += !(f.matrix() * m).is_zero();
                ++leading_ok;
                ++per_trial;
            }
        }
    }
    if (leading_ok < 100) return {false, "only " + std::to_string(leading_ok) + " solve_leading instances"};

    std::size_t peel_ok = 0;
    while (peel_ok < 100) {
        const Field f = Field::make(1 + static_cast<unsigned>(rng.below(2)));
        const std::size_t v = rng.between(1, 3);
        const QMod free = free_module(f, v);
        Mat gens = random_mat(f, rng.between(1, 3), kDadeDim * v, rng);
        for (std::size_t r = 0; r < gens.rows(); ++r)
            for (std::size_t c = 0; c < v; ++c) gens(r, c) = 0;  // inside J (x) V
        const Mat mb = action_closure(free, gens);
        const QMod m = restrict_module(free, mb);
        // soc^3 of the submodule, pushed into R (x) V
        const Mat s3 = soc_n(m, 3).basis;
        const Mat s3_amb = s3.rows() ? row_space(s3 * mb) : Mat(f, 0, free.dim());
        Mat j2(f, 5 * v, free.dim());
        for (std::size_t r = 0; r < 5 * v; ++r) j2(r, 3 * v + r) = 1;
        if (!subspace_equal(s3_amb, subspace_intersect(mb, j2))) return {false, "soc^3(M) differs from M n J^2 V"};
        ++peel_ok;
    }
    std::ostringstream os;
    os << radical_ok << " solve_in_radical, " << leading_ok << " solve_leading (" << leading_nonzero
       << " with f(m) != 0), " << peel_ok << " soc^3 identities";
    return {true, os.str()};
}

// ---- criterion 8 ----------------------------------------------------------

Outcome base_change_contract() {
    Rng rng(8008);
    const Field f2 = Field::gf2(), f4 = Field::f4();
    const FieldEmbedding e = field_embed(f2, f4);
    std::size_t maps = 0, trivial = 0, built = 0;
    while (maps < 50) {
        const QMod m = random_module(f2, rng, 10), n = random_module(f2, rng, 10);
        ModMap h = ModMap::zero(m, n);
        const bool through_free = maps % 2 == 0;
        if (through_free) {
            // through R^k
            const QMod free = free_module(f2, rng.between(1, 2));
            const auto a = hom_space(m, free), b = hom_space(free, n);
            if (a.empty() || b.empty()) continue;
            Mat ma(f2, free.dim(), m.dim()), mb(f2, n.dim(), free.dim());
            for (const auto& x : a)
                if (rng.coin()) ma = ma + x.matrix();
            for (const auto& x : b)
                if (rng.coin()) mb = mb + x.matrix();
            h = ModMap(m, n, mb * ma);
            ++built;
        } else {
            const auto hs = hom_space(m, n);
            if (hs.empty()) continue;
            Mat acc(f2, n.dim(), m.dim());
            for (const auto& x : hs)
                if (rng.coin()) acc = acc + x.matrix();
            h = ModMap(m, n, acc);
        }
        ++maps;
        const Embedding hull = injective_hull(m);
        const Embedding hull4{hull.v_dim, base_change(hull.iota, e)};
        const auto ext = factor_through(base_change(h, e), hull4);
        const bool base_trivial = stably_trivial(h);
        if (through_free && !ext) return {false, "a map through R^k is not trivial over F4"};
        if (!ext) {
            if (base_trivial) return {false, "trivial over GF(2) but not over F4"};
            continue;
        }
        const auto w = descend_witness(h, hull, *ext, e);
        if (!w) return {false, "descent failed"};
        if (w->factor.field() != f2 || !w->factor.is_homomorphism() ||
            compose(w->factor, w->hull.iota).matrix() != h.matrix() || !base_trivial)
            return {false, "transported witness does not factor the map"};
        ++trivial;
    }
    std::ostringstream os;
    os << maps << " maps (" << built << " through free modules), " << trivial << " trivial over F4 with verified GF(2) witnesses";
    return {true, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
    const std::filesystem::path dir = argc > 1 ? std::filesystem::path(argv[1])
                                               : std::filesystem::temp_directory_path() / "qghost-acceptance";
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "algebra-fidelity", algebra_fidelity},
        {2, "periodicity", periodicity},
        {3, "ghost-space-soundness", ghost_soundness},
        {4, "kronecker", kronecker},
        {5, "lower-bound", [&] { return lower_bound(dir); }},
        {6, "upper-bound", upper_bound},
        {7, "lemma-checks", lemma_checks},
        {8, "base-change", base_change_contract},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("criterion %d %s: %s (%s)\n", c.id, c.name, o.pass ? "PASS" : "FAIL", o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
