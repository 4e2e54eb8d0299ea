#include "qghost/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "qghost/error.hpp"

namespace qghost {

std::string fnv1a_hex(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

struct Header {
    std::vector<std::string> words;
    std::map<std::string, std::string> kv;

    const std::string& get(const std::string& key) const {
        auto it = kv.find(key);
        if (it == kv.end()) throw ParseError("missing '" + key + "=' in header '" + words.front() + "'");
        return it->second;
    }
};

std::uint64_t parse_uint(std::string_view s, int base, const char* what) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw ParseError(std::string("bad ") + what + " '" + std::string(s) + "'");
    return v;
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

class Reader {
public:
    explicit Reader(std::string_view text) {
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t end = text.find('\n', pos);
            if (end == std::string_view::npos) end = text.size();
            std::string_view line = text.substr(pos, end - pos);
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            const auto first = line.find_first_not_of(" \t");
            if (first != std::string_view::npos && line[first] != '#') lines_.push_back(line);
            pos = end + 1;
        }
    }

    bool done() const { return next_ >= lines_.size(); }

    std::string_view raw() {
        if (done()) throw ParseError("unexpected end of input");
        return lines_[next_++];
    }

    std::string_view peek_keyword() const {
        if (done()) return {};
        auto w = split_ws(lines_[next_]);
        return w.empty() ? std::string_view{} : w.front();
    }

    std::vector<std::string_view> tokens() { return split_ws(raw()); }

    Header header(std::string_view keyword) {
        auto toks = tokens();
        if (toks.empty() || toks.front() != keyword)
            throw ParseError("expected '" + std::string(keyword) + "' line");
        Header h;
        for (auto t : toks) {
            h.words.emplace_back(t);
            if (auto eq = t.find('='); eq != std::string_view::npos)
                h.kv[std::string(t.substr(0, eq))] = std::string(t.substr(eq + 1));
        }
        return h;
    }

    void expect_end() const {
        if (!done()) throw ParseError("trailing content: '" + std::string(lines_[next_]) + "'");
    }

private:
    std::vector<std::string_view> lines_;
    std::size_t next_ = 0;
};

Mat read_matrix(Reader& r) {
    const Header h = r.header("field");
    if (h.words.size() < 3 || h.words[1].rfind("2^", 0) != 0) throw ParseError("bad field header");
    const auto k = parse_uint(std::string_view(h.words[1]).substr(2), 10, "field degree");
    const auto modulus = parse_uint(h.get("modulus"), 16, "modulus");
    if (k < 1 || k > 16) throw ParseError("field degree out of range");
    Field f = [&] {
        try {
            return Field::make(static_cast<unsigned>(k), static_cast<std::uint32_t>(modulus));
        } catch (const Error& e) {
            throw ParseError(std::string("bad field: ") + e.what());
        }
    }();
    const auto dims = r.tokens();
    if (dims.size() != 2) throw ParseError("expected '<rows> <cols>'");
    const std::size_t rows = parse_uint(dims[0], 10, "row count");
    const std::size_t cols = parse_uint(dims[1], 10, "column count");
    if (rows > 4096 || cols > 4096) throw ParseError("matrix too large");
    Mat m(f, rows, cols);
    for (std::size_t i = 0; cols > 0 && i < rows; ++i) {
        const auto toks = r.tokens();
        if (toks.size() != cols) throw ParseError("row " + std::to_string(i) + " has the wrong length");
        for (std::size_t j = 0; j < cols; ++j) {
            const auto v = parse_uint(toks[j], 16, "entry");
            if (v >= f.order()) throw ParseError("entry out of range for " + f.name());
            m(i, j) = static_cast<Elem>(v);
        }
    }
    return m;
}

void write_matrix(std::ostream& os, const Mat& m) {
    os << m.field().header() << "\n" << m.rows() << " " << m.cols() << "\n";
    char buf[8];
    for (std::size_t i = 0; m.cols() > 0 && i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%x", m(i, j));
            if (j) os << ' ';
            os << buf;
        }
        os << "\n";
    }
}

QMod read_module(Reader& r) {
    const Header h = r.header("qmod");
    const std::size_t d = parse_uint(h.get("dim"), 10, "dim");
    Mat x = read_matrix(r);
    Mat y = read_matrix(r);
    if (x.rows() != d || x.cols() != d || y.rows() != d || y.cols() != d)
        throw ParseError("module matrices must be " + std::to_string(d) + " x " + std::to_string(d));
    if (x.field() != y.field()) throw ParseError("module matrices over different fields");
    return QMod(std::move(x), std::move(y));
}

void write_module(std::ostream& os, const QMod& m) {
    os << "qmod dim=" << m.dim() << "\n";
    write_matrix(os, m.x());
    write_matrix(os, m.y());
}

ModMap read_map(Reader& r, const QMod& source, const QMod& target) {
    const Header h = r.header("map");
    if (h.get("source") != module_digest(source)) throw ParseError("map source digest does not match");
    if (h.get("target") != module_digest(target)) throw ParseError("map target digest does not match");
    Mat m = read_matrix(r);
    if (m.rows() != target.dim() || m.cols() != source.dim()) throw ParseError("map matrix has the wrong shape");
    if (m.field() != source.field() && source.dim() > 0) throw ParseError("map over a different field");
    return ModMap(source, target, std::move(m));
}

void write_map(std::ostream& os, const ModMap& f) {
    os << "map source=" << module_digest(f.source()) << " target=" << module_digest(f.target()) << "\n";
    write_matrix(os, f.matrix());
}

ModMap read_embedding(Reader& r, const QMod& source) {
    const Header h = r.header("embedding");
    const std::size_t n = parse_uint(h.get("n"), 10, "n");
    if (n > 512) throw ParseError("embedding too large");
    return read_map(r, source, free_module(source.field(), n));
}

void write_embedding(std::ostream& os, const ModMap& iota) {
    os << "embedding n=" << iota.target().dim() / kDadeDim << "\n";
    write_map(os, iota);
}

template <class Fn>
auto parse_all(std::string_view text, Fn&& fn) {
    Reader r(text);
    try {
        auto out = fn(r);
        r.expect_end();
        return out;
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

bool parse_flag(const Header& h, const std::string& key) {
    const std::string& v = h.get(key);
    if (v != "0" && v != "1") throw ParseError("flag '" + key + "' must be 0 or 1");
    return v == "1";
}

}  // namespace

std::string format_matrix(const Mat& m) {
    std::ostringstream os;
    write_matrix(os, m);
    return os.str();
}

Mat parse_matrix(std::string_view text) {
    return parse_all(text, [](Reader& r) { return read_matrix(r); });
}

std::string format_module(const QMod& m) {
    std::ostringstream os;
    write_module(os, m);
    return os.str();
}

QMod parse_module(std::string_view text) {
    return parse_all(text, [](Reader& r) { return read_module(r); });
}

std::string module_digest(const QMod& m) { return fnv1a_hex(format_module(m)); }

std::string format_map_bundle(const ModMap& f) {
    std::ostringstream os;
    write_module(os, f.source());
    write_module(os, f.target());
    write_map(os, f);
    return os.str();
}

ModMap parse_map_bundle(std::string_view text) {
    return parse_all(text, [](Reader& r) {
        QMod s = read_module(r);
        QMod t = read_module(r);
        return read_map(r, s, t);
    });
}

std::string format_relation(const LinearRelation& rel) {
    std::ostringstream os;
    os << "relation n=" << rel.n << " dimL=" << rel.dim() << "\n";
    write_matrix(os, rel.basis);
    return os.str();
}

LinearRelation parse_relation(std::string_view text) {
    return parse_all(text, [](Reader& r) {
        const Header h = r.header("relation");
        const std::size_t n = parse_uint(h.get("n"), 10, "n");
        const std::size_t d = parse_uint(h.get("dimL"), 10, "dimL");
        Mat b = read_matrix(r);
        if (b.rows() != d || b.cols() != 2 * n) throw ParseError("relation matrix must be dimL x 2n");
        return LinearRelation::make(n, std::move(b));
    });
}

std::string format_triple(const GhostTriple& t, const std::optional<ModMap>& iota) {
    std::ostringstream os;
    os << "triple\n";
    write_module(os, t.f1.source());
    write_module(os, t.f2.source());
    write_module(os, t.f3.source());
    write_module(os, t.f3.target());
    write_map(os, t.f1);
    write_map(os, t.f2);
    write_map(os, t.f3);
    if (iota) write_embedding(os, *iota);
    return os.str();
}

TripleFile parse_triple(std::string_view text) {
    return parse_all(text, [](Reader& r) {
        r.header("triple");
        QMod m = read_module(r), n1 = read_module(r), n2 = read_module(r), n = read_module(r);
        ModMap f1 = read_map(r, m, n1);
        ModMap f2 = read_map(r, n1, n2);
        ModMap f3 = read_map(r, n2, n);
        std::optional<ModMap> iota;
        if (r.peek_keyword() == "embedding") iota = read_embedding(r, m);
        return TripleFile{GhostTriple{std::move(f1), std::move(f2), std::move(f3)}, std::move(iota)};
    });
}

std::string format_witness(const DoubleGhostWitness& w) {
    std::ostringstream os;
    os << "witness kind=double-ghost verdict=not-stably-trivial\n";
    os << "origin " << w.origin << "\n";
    write_module(os, w.m0);
    write_module(os, w.m1);
    write_module(os, w.m2);
    write_map(os, w.g1);
    write_map(os, w.g2);
    return os.str();
}

DoubleGhostWitness parse_witness(std::string_view text) {
    return parse_all(text, [](Reader& r) {
        const Header h = r.header("witness");
        if (h.get("kind") != "double-ghost") throw ParseError("unknown witness kind");
        std::string origin;
        if (r.peek_keyword() == "origin") {
            std::string_view line = r.raw();
            line.remove_prefix(line.find("origin") + 6);
            const auto first = line.find_first_not_of(" \t");
            origin = first == std::string_view::npos ? "" : std::string(line.substr(first));
        }
        QMod m0 = read_module(r), m1 = read_module(r), m2 = read_module(r);
        ModMap g1 = read_map(r, m0, m1);
        ModMap g2 = read_map(r, m1, m2);
        return DoubleGhostWitness{std::move(m0), std::move(m1), std::move(m2), std::move(g1), std::move(g2),
                                  std::move(origin)};
    });
}

std::string format_certificate(const LiftCertificate& c, const ModMap& f) {
    std::ostringstream os;
    os << "certificate kind=lift verdict=stably-trivial extends=" << c.flags.extends
       << " image_in_rad2=" << c.flags.image_in_rad2 << " kills_j2=" << c.flags.kills_j2
       << " extension_summands=" << c.extension_summands << "\n";
    os << "tower";
    for (const auto& fld : c.tower) os << " 2^" << fld.degree();
    os << "\n";
    write_module(os, f.source());
    write_module(os, f.target());
    write_map(os, f);
    write_embedding(os, c.iota);
    write_map(os, c.fbar);
    const std::string rep = summand_report(c.decomposition);
    std::size_t lines = 0;
    for (char ch : rep) lines += ch == '\n';
    os << "report lines=" << lines << "\n" << rep;
    return os.str();
}

CertificateFile parse_certificate(std::string_view text) {
    return parse_all(text, [](Reader& r) {
        const Header h = r.header("certificate");
        if (h.get("kind") != "lift") throw ParseError("unknown certificate kind");
        LiftFlags claimed;
        claimed.extends = parse_flag(h, "extends");
        claimed.image_in_rad2 = parse_flag(h, "image_in_rad2");
        claimed.kills_j2 = parse_flag(h, "kills_j2");
        const auto tower_toks = r.tokens();
        if (tower_toks.empty() || tower_toks.front() != "tower") throw ParseError("expected 'tower' line");
        std::vector<std::string> tower(tower_toks.begin() + 1, tower_toks.end());
        QMod m = read_module(r), n = read_module(r);
        ModMap f = read_map(r, m, n);
        ModMap iota = read_embedding(r, m);
        ModMap fbar = read_map(r, iota.target(), n);
        const Header rh = r.header("report");
        const std::size_t lines = parse_uint(rh.get("lines"), 10, "line count");
        std::string report;
        for (std::size_t i = 0; i < lines; ++i) {
            report += r.raw();
            report += '\n';
        }
        return CertificateFile{std::move(m), std::move(n),  std::move(f),      std::move(iota),
                               std::move(fbar), claimed, std::move(tower), std::move(report)};
    });
}

ValidationReport verify_certificate(const CertificateFile& c) {
    if (!c.f.is_homomorphism()) return {false, "f is not a module map"};
    if (!c.iota.is_homomorphism()) return {false, "iota is not a module map"};
    if (!c.fbar.is_homomorphism()) return {false, "fbar is not a module map"};
    if (rank(c.iota.matrix()) != c.source.dim()) return {false, "iota is not injective"};
    const LiftFlags got = check_lift(c.fbar, c.iota, c.f);
    if (!got.extends) return {false, "fbar o iota != f"};
    if (!got.image_in_rad2) return {false, "image(fbar) is not inside rad^2(N)"};
    if (!got.kills_j2) return {false, "fbar does not vanish on J^2 (x) V"};
    if (!c.claimed.all()) return {false, "certificate claims a failed flag"};
    return {};
}

std::string file_kind(std::string_view text) {
    Reader r(text);
    return std::string(r.peek_keyword());
}

std::string read_text_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw ParseError("cannot open " + p.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::filesystem::path& p, std::string_view text) {
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error("cannot write " + p.string());
    out << text;
}

}  // namespace qghost
