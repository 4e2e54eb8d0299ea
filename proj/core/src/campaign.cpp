#include "qghost/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <thread>

#include "qghost/error.hpp"

namespace qghost {

Record& Record::add(std::string key, std::string value) {
    for (char& c : value)
        if (c == ' ' || c == '\t' || c == '\n') c = '_';
    fields.emplace_back(std::move(key), std::move(value));
    return *this;
}

std::string Record::line() const {
    std::string out;
    for (const auto& [k, v] : fields) {
        if (!out.empty()) out += ' ';
        out += k + "=" + v;
    }
    return out;
}

std::string Report::text() const {
    std::string out;
    for (const auto& r : records) out += r.line() + "\n";
    return out;
}

Submodule graph_module(const Mat& a) {
    const Field& f = a.field();
    const std::size_t n = a.rows();
    if (!a.is_square()) throw ShapeError("graph_module: matrix must be square");
    const QMod free = free_module(f, n);
    Mat rows(f, n + 5 * n, kDadeDim * n);
    for (std::size_t i = 0; i < n; ++i) {
        rows(i, n + i) = 1;  // x (x) e_i + y (x) a e_i
        for (std::size_t k = 0; k < n; ++k) rows(i, 2 * n + k) = a(k, i);
    }
    for (std::size_t w = 3; w < kDadeDim; ++w)
        for (std::size_t k = 0; k < n; ++k) rows(n + (w - 3) * n + k, w * n + k) = 1;
    return {free, row_space(rows)};
}

Mat random_irreducible_matrix(const Field& f, std::size_t n, Rng& rng) {
    for (;;) {
        Mat a(f, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.element(f);
        if (is_irreducible(char_poly(a))) return a;
    }
}

namespace {

ModMap choose_ghost(const ModMap& h, const std::vector<QMod>& pool, const CampaignConfig& cfg, Rng& rng) {
    const Field& f = h.field();
    std::optional<ModMap> fallback;
    for (std::size_t c = 0; c < cfg.candidates; ++c) {
        const QMod cand = c % 3 == 0 ? pool[rng.below(pool.size())] : random_module(f, rng, cfg.max_dim);
        const GhostSpace g = ghost_space(h.target(), cand);
        if (g.basis.empty()) {
            if (!fallback) fallback = ModMap::zero(h.target(), cand);
            continue;
        }
        for (int k = 0; k < 4; ++k) {
            ModMap gg = sample_ghost(g, rng.next());
            if (!compose(gg, h).is_zero()) return gg;
            if (!fallback) fallback = gg;
        }
        for (const auto& b : g.basis)
            if (!compose(b, h).is_zero()) return b;
    }
    if (fallback) return *fallback;
    return ModMap::zero(h.target(), trivial_module(f));
}

std::string case_counts(const KroneckerDecomposition& d) {
    std::map<std::string, std::size_t> counts;
    for (const auto& s : d.summands) ++counts[std::string(case_name(s.kind))];
    std::string out;
    for (const auto& [k, v] : counts) {
        if (!out.empty()) out += ',';
        out += k + ":" + std::to_string(v);
    }
    return out.empty() ? "none" : out;
}

}  // namespace

TrialInstance sample_trial(const CampaignConfig& cfg, std::size_t index) {
    const Field f = Field::make(cfg.field_degree);
    Rng rng = Rng::stream(cfg.seed, index);
    std::vector<QMod> pool;
    for (const auto& m : default_pool(f))
        if (m.dim() <= cfg.max_dim) pool.push_back(m);

    TrialInstance inst{"random", GhostTriple{ModMap::identity(QMod(f)), ModMap::identity(QMod(f)),
                                             ModMap::identity(QMod(f))},
                       std::nullopt};
    QMod m(f);
    if (cfg.graph_every > 0 && index % cfg.graph_every == 0 && cfg.max_dim >= 12) {
        const Submodule s = graph_module(random_irreducible_matrix(f, 2, rng));
        m = s.module();
        inst.kind = "graph";
        inst.iota = s.inclusion();
    } else {
        m = random_module(f, rng, cfg.max_dim);
    }
    ModMap h = ModMap::identity(m);
    std::vector<ModMap> maps;
    for (int stage = 0; stage < 3; ++stage) {
        ModMap g = choose_ghost(h, pool, cfg, rng);
        h = compose(g, h);
        maps.push_back(std::move(g));
    }
    inst.triple = GhostTriple{maps[0], maps[1], maps[2]};
    return inst;
}

TrialResult run_trial(const TrialInstance& inst, std::size_t index) {
    TrialResult r;
    r.index = index;
    r.kind = inst.kind;
    const GhostTriple& t = inst.triple;
    r.dims = {t.f1.source().dim(), t.f2.source().dim(), t.f3.source().dim(), t.f3.target().dim()};
    r.nonzero = !t.composite().is_zero();
    const OracleReport rep = stable_triviality_oracle_compare(t, inst.iota);
    r.lift_trivial = rep.lift_trivial;
    r.direct_trivial = rep.direct_trivial;
    r.error = rep.lift_error;
    if (rep.certificate) {
        const auto& c = *rep.certificate;
        for (const auto& fld : c.tower) r.tower += (r.tower.empty() ? "" : ">") + ("2^" + std::to_string(fld.degree()));
        r.cases = case_counts(c.decomposition);
        r.extension = c.tower.size() > 1;
    } else {
        r.tower = "2^" + std::to_string(t.f1.field().degree());
        r.cases = "unknown";
    }
    return r;
}

bool CampaignResult::all_trivial() const {
    for (const auto& t : trials)
        if (!t.passed()) return false;
    return !trials.empty();
}

std::size_t CampaignResult::extension_trials() const {
    std::size_t n = 0;
    for (const auto& t : trials) n += t.extension;
    return n;
}

CampaignResult verify_theorem(const CampaignConfig& cfg) {
    if (cfg.trials == 0) throw PreconditionError("campaign needs at least one trial");
    CampaignResult res;
    res.trials.resize(cfg.trials);
    std::atomic<std::size_t> next{0};
    std::mutex mu;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cfg.trials) return;
            try {
                TrialInstance inst = sample_trial(cfg, i);
                TrialResult r = run_trial(inst, i);
                if (!r.passed()) {
                    std::lock_guard lock(mu);
                    res.failures.emplace_back(i, std::move(inst));
                }
                res.trials[i] = std::move(r);
            } catch (const std::exception& e) {
                TrialResult r;
                r.index = i;
                r.kind = "error";
                r.error = e.what();
                res.trials[i] = std::move(r);
            }
        }
    };
    unsigned jobs = cfg.jobs ? cfg.jobs : std::max(1u, std::thread::hardware_concurrency());
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, cfg.trials));
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (unsigned j = 0; j < jobs; ++j) threads.emplace_back(worker);
        for (auto& th : threads) th.join();
    }
    std::sort(res.failures.begin(), res.failures.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return res;
}

Report campaign_report(const CampaignConfig& cfg, const CampaignResult& res) {
    Report rep;
    rep.add()
        .add("command", "verify-theorem")
        .add("field", "2^" + std::to_string(cfg.field_degree))
        .add("seed", std::to_string(cfg.seed))
        .add("trials", cfg.trials)
        .add("max_dim", cfg.max_dim);
    std::size_t lift_ok = 0, direct_ok = 0, disagree = 0, nonzero = 0;
    for (const auto& t : res.trials) {
        std::string dims;
        for (auto d : t.dims) dims += (dims.empty() ? "" : ",") + std::to_string(d);
        Record& r = rep.add();
        r.add("trial", t.index)
            .add("kind", t.kind)
            .add("dims", dims.empty() ? std::string("none") : dims)
            .add("nonzero", t.nonzero)
            .add("cases", t.cases.empty() ? std::string("none") : t.cases)
            .add("tower", t.tower.empty() ? std::string("none") : t.tower)
            .add("lift", t.lift_trivial ? "trivial" : "failed")
            .add("direct", t.direct_trivial ? "trivial" : "nontrivial")
            .add("agree", t.agree());
        if (!t.error.empty()) r.add("error", t.error);
        lift_ok += t.lift_trivial;
        direct_ok += t.direct_trivial;
        disagree += !t.agree();
        nonzero += t.nonzero;
    }
    rep.add()
        .add("summary", "totals")
        .add("lift_trivial", lift_ok)
        .add("direct_trivial", direct_ok)
        .add("disagreements", disagree)
        .add("nonzero_composites", nonzero)
        .add("extension_trials", res.extension_trials());
    rep.add().add("verdict", res.all_trivial() ? "all-trivial" : "failed");
    return rep;
}

}  // namespace qghost
