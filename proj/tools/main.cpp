// qghost: command-line front end for module checks, Kronecker decompositions,
// ghost analysis, lifts and the two verification campaigns.
//
// Exit codes: 0 every verification passed, 1 a verification failed,
// 2 malformed input or command line.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qghost/campaign.hpp"
#include "qghost/error.hpp"
#include "qghost/io.hpp"

namespace fs = std::filesystem;
using namespace qghost;

namespace {

struct Options {
    std::string format = "text";
    std::string out_dir;
};

std::string compact(std::string s) {
    std::erase(s, ' ');
    return s;
}

std::string hex_rows(const Mat& m) {
    std::string out;
    char buf[8];
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) out += ';';
        for (std::size_t j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%x", m(i, j));
            if (j) out += ',';
            out += buf;
        }
    }
    return out.empty() ? "none" : out;
}

void emit(const Options& opt, const Report& rep) {
    if (opt.format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& r : rep.records) {
            nlohmann::ordered_json obj = nlohmann::ordered_json::object();
            for (const auto& [k, v] : r.fields) obj[k] = v;
            arr.push_back(std::move(obj));
        }
        std::cout << arr.dump(2) << "\n";
    } else {
        std::cout << rep.text();
    }
}

fs::path out_dir(const Options& opt) {
    if (!opt.out_dir.empty()) return opt.out_dir;
    if (const char* env = std::getenv("QGHOST_OUT_DIR"); env && *env) return env;
    return fs::current_path();
}

void add_timestamp(Report& rep, std::chrono::steady_clock::time_point start) {
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    char buf[32];
    const std::time_t now = std::time(nullptr);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    rep.add().add("timestamp", std::string(buf)).add("elapsed_ms", static_cast<std::size_t>(ms));
}

int verdict(Report& rep, bool ok, const std::string& command) {
    rep.records.insert(rep.records.begin(), Record{}.add("command", command));
    rep.add().add("verdict", ok ? "ok" : "fail");
    return ok ? 0 : 1;
}

int cmd_check_module(const Options& opt, const std::string& file) {
    const QMod m = parse_module(read_text_file(file));
    Report rep;
    const ValidationReport v = validate_qmod(m);
    Record& r = rep.add();
    r.add("dim", m.dim()).add("field", m.field().name()).add("relations", v.ok ? "hold" : "violated");
    if (!v.ok) r.add("violation", v.violation);
    if (v.ok) {
        std::string layers;
        for (std::size_t i = 0; i < 5; ++i) {
            const std::size_t a = rad_n(m, i).dim(), b = rad_n(m, i + 1).dim();
            layers += (i ? "," : "") + std::to_string(a - b);
        }
        rep.add()
            .add("radical_layers", layers)
            .add("free_rank", free_rank(m))
            .add("projective_free", is_projective_free(m));
    }
    const int code = verdict(rep, v.ok, "check-module");
    emit(opt, rep);
    return code;
}

int cmd_kronecker(const Options& opt, const std::string& file) {
    const LinearRelation rel = parse_relation(read_text_file(file));
    const KroneckerDecomposition d = decompose(rel);
    std::string why;
    const bool ok = verify_decomposition(rel, d, &why);
    Report rep;
    rep.add().add("n", rel.n).add("dimL", rel.dim()).add("summands", d.summands.size());
    for (std::size_t i = 0; i < d.summands.size(); ++i) {
        const auto& s = d.summands[i];
        Record& r = rep.add();
        r.add("summand", i)
            .add("case", std::string(case_name(s.kind)))
            .add("n", s.n())
            .add("dimL", s.l_basis.rows())
            .add("e", hex_rows(s.v_basis))
            .add("l", hex_rows(s.l_basis));
        if (s.char_poly) {
            r.add("charpoly", compact(s.char_poly->to_string()));
            std::string fac;
            for (const auto& pf : s.factors)
                fac += (fac.empty() ? "" : "*") + ("(" + compact(pf.factor.to_string()) + ")^" + std::to_string(pf.multiplicity));
            r.add("factors", fac);
        }
    }
    Record& chk = rep.add();
    chk.add("reconstitutes", ok);
    if (!ok) chk.add("reason", why);
    const int code = verdict(rep, ok, "kronecker-decompose");
    emit(opt, rep);
    return code;
}

ModMap load_map(const std::string& file, Report& rep, bool& ok) {
    ModMap f = parse_map_bundle(read_text_file(file));
    ok = f.is_homomorphism();
    rep.add().add("source_dim", f.source().dim()).add("target_dim", f.target().dim()).add("module_map", ok);
    return f;
}

int cmd_is_ghost(const Options& opt, const std::string& file) {
    Report rep;
    bool ok = false;
    const ModMap f = load_map(file, rep, ok);
    if (ok) {
        ok = is_ghost(f);
        rep.add().add("ghost", ok);
    }
    const int code = verdict(rep, ok, "is-ghost");
    emit(opt, rep);
    return code;
}

int cmd_stably_trivial(const Options& opt, const std::string& file) {
    Report rep;
    bool ok = false;
    const ModMap f = load_map(file, rep, ok);
    if (ok) {
        const auto w = stably_trivial_witness(f);
        const bool dual = stably_trivial_via_cover(f);
        rep.add()
            .add("stably_trivial", w.has_value())
            .add("via_cover", dual)
            .add("agree", w.has_value() == dual)
            .add("hull_rank", w ? w->hull.v_dim : std::size_t{0});
        ok = w.has_value() && dual;
    }
    const int code = verdict(rep, ok, "stably-trivial");
    emit(opt, rep);
    return code;
}

int cmd_lift(const Options& opt, const std::string& file, const std::string& out_name) {
    const TripleFile tf = parse_triple(read_text_file(file));
    Report rep;
    const ValidationReport v = validate_triple(tf.triple);
    rep.add().add("hypotheses", v.ok ? "hold" : "violated");
    if (!v.ok) {
        rep.records.back().add("violation", v.violation).add("action", "rejected-before-lifting");
        const int code = verdict(rep, false, "lift");
        emit(opt, rep);
        return code;
    }
    const ModMap f = tf.triple.composite();
    bool ok = false;
    try {
        const LiftCertificate cert = tf.iota ? build_lift(tf.triple, *tf.iota) : build_lift(tf.triple);
        const fs::path path = out_dir(opt) / out_name;
        const std::string text = format_certificate(cert, f);
        write_text_file(path, text);
        const ValidationReport re = verify_certificate(parse_certificate(read_text_file(path)));
        std::string tower;
        for (const auto& fld : cert.tower) tower += (tower.empty() ? "" : ">") + ("2^" + std::to_string(fld.degree()));
        rep.add()
            .add("extends", cert.flags.extends)
            .add("image_in_rad2", cert.flags.image_in_rad2)
            .add("kills_j2", cert.flags.kills_j2)
            .add("tower", tower)
            .add("summands", cert.decomposition.summands.size())
            .add("certificate", path.string())
            .add("self_verified", re.ok);
        ok = re.ok;
    } catch (const Error& e) {
        const fs::path dump = out_dir(opt) / "lift-failure-triple.txt";
        write_text_file(dump, format_triple(tf.triple, tf.iota));
        rep.add().add("error", std::string(e.what())).add("dump", dump.string());
    }
    const int code = verdict(rep, ok, "lift");
    emit(opt, rep);
    return code;
}

int cmd_verify_witness(const Options& opt, const std::string& file) {
    const std::string text = read_text_file(file);
    const std::string kind = file_kind(text);
    Report rep;
    bool ok = false;
    if (kind == "witness") {
        const DoubleGhostWitness w = parse_witness(text);
        const bool g1 = w.g1.is_homomorphism() && is_ghost(w.g1);
        const bool g2 = w.g2.is_homomorphism() && is_ghost(w.g2);
        const bool nontrivial = !stably_trivial(compose(w.g2, w.g1));
        rep.add()
            .add("kind", "double-ghost")
            .add("dims", std::to_string(w.m0.dim()) + "," + std::to_string(w.m1.dim()) + "," +
                             std::to_string(w.m2.dim()))
            .add("g1_ghost", g1)
            .add("g2_ghost", g2)
            .add("composite_stably_trivial", !nontrivial);
        ok = g1 && g2 && nontrivial;
    } else if (kind == "certificate") {
        const CertificateFile c = parse_certificate(text);
        const ValidationReport v = verify_certificate(c);
        Record& r = rep.add();
        r.add("kind", "lift-certificate").add("source_dim", c.source.dim()).add("target_dim", c.target.dim());
        if (!v.ok) r.add("violation", v.violation);
        ok = v.ok;
    } else {
        throw ParseError("unknown witness file kind '" + kind + "'");
    }
    const int code = verdict(rep, ok, "verify-witness");
    emit(opt, rep);
    return code;
}

int cmd_verify_theorem(const Options& opt, const CampaignConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    const CampaignResult res = verify_theorem(cfg);
    Report rep = campaign_report(cfg, res);
    for (const auto& [i, inst] : res.failures) {
        const fs::path dump = out_dir(opt) / ("failed-trial-" + std::to_string(i) + ".txt");
        write_text_file(dump, format_triple(inst.triple, inst.iota));
        rep.add().add("failed_trial", i).add("dump", dump.string());
    }
    add_timestamp(rep, start);
    emit(opt, rep);
    return res.all_trivial() ? 0 : 1;
}

int cmd_lower_bound(const Options& opt, double budget_s, std::uint64_t seed, const std::string& pool,
                    std::size_t random) {
    const auto start = std::chrono::steady_clock::now();
    const Field f = Field::gf2();
    LowerBoundConfig cfg;
    if (pool == "projective") {
        cfg.pool = {regular_module(f), free_module(f, 2)};
        cfg.random_candidates = 0;
    } else {
        cfg.pool = default_pool(f);
        cfg.random_candidates = random;
    }
    cfg.seed = seed;
    cfg.budget = std::chrono::milliseconds(static_cast<long long>(budget_s * 1000));
    const LowerBoundResult res = lower_bound_search(cfg);
    Report rep;
    rep.add()
        .add("command", "lower-bound-search")
        .add("seed", std::to_string(seed))
        .add("pool", pool)
        .add("pool_size", cfg.pool.size());
    rep.add().add("candidates", res.candidates).add("budget_exhausted", res.budget_exhausted);
    if (res.witness) {
        const fs::path path = out_dir(opt) / "double-ghost-witness.txt";
        write_text_file(path, format_witness(*res.witness));
        const bool reverified = verify_double_ghost(parse_witness(read_text_file(path)));
        rep.add()
            .add("origin", res.witness->origin)
            .add("dims", std::to_string(res.witness->m0.dim()) + "," + std::to_string(res.witness->m1.dim()) + "," +
                             std::to_string(res.witness->m2.dim()))
            .add("witness", path.string())
            .add("reverified", reverified);
        rep.add().add("result", reverified ? "certified" : "witness-failed-re-verification");
        add_timestamp(rep, start);
        emit(opt, rep);
        if (opt.format == "text" && reverified) std::cout << "ghost number ≥ 3 certified\n";
        return reverified ? 0 : 1;
    }
    rep.add().add("result", "inconclusive");
    add_timestamp(rep, start);
    emit(opt, rep);
    if (opt.format == "text") std::cout << "inconclusive\n";
    return 0;
}

int cmd_sample_triple(const Options& opt, const CampaignConfig& cfg, std::size_t index, const std::string& name) {
    const TrialInstance inst = sample_trial(cfg, index);
    const fs::path path = out_dir(opt) / name;
    write_text_file(path, format_triple(inst.triple, inst.iota));
    const GhostTriple& t = inst.triple;
    Report rep;
    rep.add()
        .add("kind", inst.kind)
        .add("dims", std::to_string(t.f1.source().dim()) + "," + std::to_string(t.f2.source().dim()) + "," +
                         std::to_string(t.f3.source().dim()) + "," + std::to_string(t.f3.target().dim()))
        .add("nonzero", !t.composite().is_zero())
        .add("triple", path.string());
    const int code = verdict(rep, true, "sample-triple");
    emit(opt, rep);
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qghost: exact computations with KQ8-modules, ghosts and lifts"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--out-dir", opt.out_dir, "Directory for written files (default: $QGHOST_OUT_DIR or cwd)");

    std::string file;
    auto* check = app.add_subcommand("check-module", "Validate a module file");
    check->add_option("file", file)->required();
    auto* kron = app.add_subcommand("kronecker-decompose", "Decompose a relation file");
    kron->add_option("file", file)->required();
    auto* ghost = app.add_subcommand("is-ghost", "Test whether a map is a ghost");
    ghost->add_option("file", file)->required();
    auto* triv = app.add_subcommand("stably-trivial", "Test whether a map factors through a projective");
    triv->add_option("file", file)->required();
    std::string cert_name = "lift-certificate.txt";
    auto* lift = app.add_subcommand("lift", "Build and verify a lift certificate for a ghost triple");
    lift->add_option("file", file)->required();
    lift->add_option("--certificate", cert_name, "Certificate file name inside the output directory");
    auto* vw = app.add_subcommand("verify-witness", "Re-verify a witness or certificate file");
    vw->add_option("file", file)->required();

    CampaignConfig cfg;
    auto* vt = app.add_subcommand("verify-theorem", "Threefold ghosts are stably trivial: randomized campaign");
    vt->add_option("--trials", cfg.trials)->check(CLI::PositiveNumber);
    vt->add_option("--max-dim", cfg.max_dim)->check(CLI::Range(1, 64));
    vt->add_option("--seed", cfg.seed);
    vt->add_option("--field", cfg.field_degree, "Field degree k of GF(2^k)")->check(CLI::Range(1, 8));
    vt->add_option("--jobs", cfg.jobs, "Worker threads (0 = all cores)");
    vt->add_option("--graph-every", cfg.graph_every, "Every k-th trial starts from a graph module");

    std::size_t index = 0;
    std::string triple_name = "triple.txt";
    auto* st = app.add_subcommand("sample-triple", "Write the ghost triple of one campaign trial");
    st->add_option("--index", index, "Trial index");
    st->add_option("--seed", cfg.seed);
    st->add_option("--max-dim", cfg.max_dim)->check(CLI::Range(1, 64));
    st->add_option("--field", cfg.field_degree)->check(CLI::Range(1, 8));
    st->add_option("--graph-every", cfg.graph_every);
    st->add_option("--name", triple_name, "File name inside the output directory");

    double budget = 600;
    std::uint64_t seed = 1;
    std::string pool = "default";
    std::size_t random = 64;
    auto* lb = app.add_subcommand("lower-bound-search", "Search for a double ghost that is not stably trivial");
    lb->add_option("--budget", budget, "Wall-clock budget in seconds")->check(CLI::PositiveNumber);
    lb->add_option("--seed", seed);
    lb->add_option("--pool", pool)->check(CLI::IsMember({"default", "projective"}));
    lb->add_option("--random", random, "Random modules tried after the pool");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*check) return cmd_check_module(opt, file);
        if (*kron) return cmd_kronecker(opt, file);
        if (*ghost) return cmd_is_ghost(opt, file);
        if (*triv) return cmd_stably_trivial(opt, file);
        if (*lift) return cmd_lift(opt, file, cert_name);
        if (*vw) return cmd_verify_witness(opt, file);
        if (*vt) return cmd_verify_theorem(opt, cfg);
        if (*st) return cmd_sample_triple(opt, cfg, index, triple_name);
        if (*lb) return cmd_lower_bound(opt, budget, seed, pool, random);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
