#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "interleaver.hpp"
#include "sim.hpp"
#include "tanner.hpp"

namespace nbldpc {

// Code file, plain text. Header `q N M dv dc primitive_poly seed girth`
// (girth 0 means acyclic), then one `j i h` line per edge in canonical
// (j, i) order, all decimal.
struct LoadedCode {
    TannerGraph graph;
    std::uint32_t dv = 0;
    std::uint32_t dc = 0;
    std::uint64_t seed = 0;
    int girth = 0;
};

void save_code(const TannerGraph& graph, std::uint32_t dv, std::uint32_t dc, std::uint64_t seed,
               std::optional<int> girth, const std::string& path);
LoadedCode load_code(const std::string& path);

// Interleaver file, plain text: header `n p m kind seed`, then perm[i] per
// line in decimal.
void save_interleaver(const InterleaverPattern& pat, const std::string& path);
InterleaverPattern load_interleaver(const std::string& path);

// Results CSV, one row per SNR point; the column order is what plot tooling
// keys on.
std::string csv_header();
std::string csv_row(const FerRecord& rec);

// FNV-1a 64-bit, used to fingerprint input artifacts in run manifests.
std::uint64_t fnv1a64(const void* data, std::size_t len);
std::uint64_t fnv1a64_file(const std::string& path);

} // namespace nbldpc
