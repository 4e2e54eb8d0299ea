#pragma once

// Line-oriented text formats. Blank lines and lines starting with '#' are
// ignored by every parser; all parse failures throw ParseError.
//
//   matrix       field 2^k modulus=<hex> / <rows> <cols> / one hex row per line
//   module       qmod dim=<d>, then the matrices of x and y
//   map          map source=<digest> target=<digest>, then the matrix
//   map bundle   source module, target module, map
//   relation     relation n=<n> dimL=<d>, then the d x 2n basis matrix
//   triple       triple, four modules, three maps, optionally an embedding
//   witness      witness kind=double-ghost ..., three modules, two maps
//   certificate  certificate kind=lift ..., M, N, f, iota, fbar, report

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qghost/kronecker.hpp"
#include "qghost/lift.hpp"
#include "qghost/stable.hpp"

namespace qghost {

/// 64-bit FNV-1a, as 16 hex digits.
std::string fnv1a_hex(std::string_view data);

std::string format_matrix(const Mat& m);
Mat parse_matrix(std::string_view text);

std::string format_module(const QMod& m);
QMod parse_module(std::string_view text);
/// Digest of the module's serialization.
std::string module_digest(const QMod& m);

/// Source module, target module and the map.
std::string format_map_bundle(const ModMap& f);
ModMap parse_map_bundle(std::string_view text);

std::string format_relation(const LinearRelation& rel);
LinearRelation parse_relation(std::string_view text);

struct TripleFile {
    GhostTriple triple;
    /// Embedding M -> R (x) V; when absent the injective embedding is used.
    std::optional<ModMap> iota;
};
std::string format_triple(const GhostTriple& t, const std::optional<ModMap>& iota = std::nullopt);
/// Parses structure only: the ghost hypotheses are checked by validate_triple.
TripleFile parse_triple(std::string_view text);

std::string format_witness(const DoubleGhostWitness& w);
DoubleGhostWitness parse_witness(std::string_view text);

struct CertificateFile {
    QMod source;
    QMod target;
    ModMap f;
    ModMap iota;
    ModMap fbar;
    LiftFlags claimed;
    std::vector<std::string> tower;
    std::string report;
};
std::string format_certificate(const LiftCertificate& c, const ModMap& f);
CertificateFile parse_certificate(std::string_view text);
/// Recomputes the three flags from the stored maps and checks that fbar is a
/// module map that agrees with the claimed flags.
ValidationReport verify_certificate(const CertificateFile& c);

/// First keyword of the first content line ("qmod", "witness", ...).
std::string file_kind(std::string_view text);

std::string read_text_file(const std::filesystem::path& p);
void write_text_file(const std::filesystem::path& p, std::string_view text);

}  // namespace qghost
