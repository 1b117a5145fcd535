#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rng.hpp"
#include "tanner.hpp"

namespace nbldpc {

enum class InterleaverKind { identity, random, peg };

const char* to_string(InterleaverKind k);
std::optional<InterleaverKind> interleaver_kind_from_string(std::string_view s);

struct PegPatternOptions {
    bool local_scramble = false; // extra per-symbol bit scrambler
    bool shuffle_order = false;  // randomize modulation-node processing order
};

// Bijection on the n coded-bit positions, viewed as the bipartite
// interleaving graph between N_m modulation-nodes (degree m) and N coded
// symbol-nodes (degree p). perm maps coded-bit index -> modulation-bit index.
class InterleaverPattern {
public:
    struct IncidenceEdge {
        std::uint32_t mod_node;
        std::uint32_t symbol;
    };

    static InterleaverPattern identity(std::uint32_t n_symbols, std::uint32_t p, std::uint32_t m);
    static InterleaverPattern random(std::uint32_t n_symbols, std::uint32_t p, std::uint32_t m,
                                     std::uint64_t seed);
    // PEG design over the global graph: first edge of each modulation-node
    // goes to a random lowest-degree symbol-node; every further edge goes to
    // a maximum-depth symbol-node with spare capacity (BFS through
    // modulation, symbol and constraint nodes), lowest degree first, random
    // among ties. Bits inside a coded symbol fill sequentially, LSB first.
    static InterleaverPattern peg(const TannerGraph& graph, std::uint32_t m, std::uint64_t seed,
                                  const PegPatternOptions& opts = {});

    // Rebuild from an explicit permutation (file load, hand-made tests).
    InterleaverPattern(InterleaverKind kind, std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> perm,
                       std::uint64_t seed = 0);

    InterleaverKind kind() const { return kind_; }
    std::uint32_t n() const { return n_; }
    std::uint32_t p() const { return p_; }
    std::uint32_t m() const { return m_; }
    std::uint32_t n_symbols() const { return n_ / p_; }
    std::uint32_t n_mod_symbols() const { return n_ / m_; }
    std::uint64_t seed() const { return seed_; }
    std::span<const std::uint32_t> perm() const { return perm_; }

    // Graph-form incidences (coded bit order for identity/random/loaded
    // patterns, placement order for freshly built PEG patterns).
    std::span<const IncidenceEdge> incidences() const { return edges_; }

    void apply(std::span<const std::uint8_t> coded, std::span<std::uint8_t> modulated) const;
    void deapply(std::span<const std::uint8_t> modulated, std::span<std::uint8_t> coded) const;

private:
    InterleaverPattern() = default;

    InterleaverKind kind_ = InterleaverKind::identity;
    std::uint32_t n_ = 0, p_ = 0, m_ = 0;
    std::uint64_t seed_ = 0;
    std::vector<std::uint32_t> perm_;
    std::vector<IncidenceEdge> edges_;

    void rebuild_edges_from_perm();
    void check_bijection() const;
};

// Pairs (modulation-node, symbol-node) connected more than once. Zero for
// any pattern that actually spreads the bits of every coded symbol.
std::uint32_t multi_edge_pairs(const InterleaverPattern& pat);

// Shortest cycle of the three-layer graph (modulation / symbol / constraint),
// with repeated incidences collapsed; nullopt when acyclic.
std::optional<int> global_girth(const TannerGraph& graph, const InterleaverPattern& pat);

} // namespace nbldpc
