#include "io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace nbldpc {

namespace {

unsigned log2_exact(unsigned q) {
    for (unsigned p = 1; p <= 8; ++p)
        if (q == 1u << p) return p;
    throw IoError("code file: field order " + std::to_string(q) + " is not a power of two in [2, 256]");
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path + " for reading");
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    return out;
}

} // namespace

void save_code(const TannerGraph& graph, std::uint32_t dv, std::uint32_t dc, std::uint64_t seed,
               std::optional<int> girth, const std::string& path) {
    std::ofstream out = open_out(path);
    out << graph.field().q() << ' ' << graph.n() << ' ' << graph.m() << ' ' << dv << ' ' << dc << ' '
        << graph.field().primitive_poly() << ' ' << seed << ' ' << girth.value_or(0) << '\n';
    for (const Edge& e : graph.edges()) out << e.check << ' ' << e.symbol << ' ' << e.coeff << '\n';
    if (!out) throw IoError("write failed: " + path);
}

LoadedCode load_code(const std::string& path) {
    std::ifstream in = open_in(path);
    unsigned q = 0, poly = 0;
    std::uint32_t n = 0, m = 0, dv = 0, dc = 0;
    std::uint64_t seed = 0;
    int girth = 0;
    if (!(in >> q >> n >> m >> dv >> dc >> poly >> seed >> girth))
        throw IoError("code file: malformed header in " + path);
    const unsigned p = log2_exact(q);
    Field field(p, poly);

    const std::uint64_t expected = static_cast<std::uint64_t>(n) * dv;
    if (expected != static_cast<std::uint64_t>(m) * dc)
        throw IoError("code file: header degrees are inconsistent with N and M");
    std::vector<Edge> edges;
    edges.reserve(expected);
    std::uint32_t j = 0, i = 0;
    unsigned h = 0;
    while (in >> j >> i >> h) edges.push_back({j, i, static_cast<Symbol>(h)});
    if (edges.size() != expected)
        throw IoError("code file: expected " + std::to_string(expected) + " edges, found " +
                      std::to_string(edges.size()));

    try {
        TannerGraph graph(std::move(field), n, m, std::move(edges));
        if (!graph.is_regular(dv, dc)) throw IoError("code file: graph is not (" + std::to_string(dv) +
                                                     "," + std::to_string(dc) + ")-regular");
        return {std::move(graph), dv, dc, seed, girth};
    } catch (const InvalidArgument& e) {
        throw IoError("code file " + path + ": " + e.what());
    }
}

void save_interleaver(const InterleaverPattern& pat, const std::string& path) {
    std::ofstream out = open_out(path);
    out << pat.n() << ' ' << pat.p() << ' ' << pat.m() << ' ' << to_string(pat.kind()) << ' ' << pat.seed()
        << '\n';
    for (std::uint32_t v : pat.perm()) out << v << '\n';
    if (!out) throw IoError("write failed: " + path);
}

InterleaverPattern load_interleaver(const std::string& path) {
    std::ifstream in = open_in(path);
    std::uint32_t n = 0, p = 0, m = 0;
    std::string kind_str;
    std::uint64_t seed = 0;
    if (!(in >> n >> p >> m >> kind_str >> seed))
        throw IoError("interleaver file: malformed header in " + path);
    const std::optional<InterleaverKind> kind = interleaver_kind_from_string(kind_str);
    if (!kind) throw IoError("interleaver file: unknown kind '" + kind_str + "'");
    std::vector<std::uint32_t> perm;
    perm.reserve(n);
    std::uint32_t v = 0;
    while (in >> v) perm.push_back(v);
    if (perm.size() != n)
        throw IoError("interleaver file: expected " + std::to_string(n) + " entries, found " +
                      std::to_string(perm.size()));
    try {
        return InterleaverPattern(*kind, p, m, std::move(perm), seed);
    } catch (const InvalidArgument& e) {
        throw IoError("interleaver file " + path + ": " + e.what());
    }
}

std::string csv_header() {
    return "ebn0_db,frames,frame_errors,detected,undetected,bit_errors,fer,detected_pct,mean_iters,"
           "ci_lo,ci_hi";
}

std::string csv_row(const FerRecord& r) {
    char buf[320];
    std::snprintf(buf, sizeof buf,
                  "%.2f,%" PRIu64 ",%" PRIu64 ",%" PRIu64 ",%" PRIu64 ",%" PRIu64
                  ",%.6e,%.2f,%.3f,%.6e,%.6e",
                  r.ebn0_db, r.frames, r.frame_errors, r.detected_errors, r.undetected_errors,
                  r.bit_errors, r.fer, r.detected_pct, r.mean_iterations, r.ci95_lo, r.ci95_hi);
    return buf;
}

std::uint64_t fnv1a64(const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= bytes[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path + " for hashing");
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buf[1 << 14];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        const std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

} // namespace nbldpc
