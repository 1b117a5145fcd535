#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gf.hpp"
#include "rng.hpp"

namespace nbldpc {

struct Edge {
    std::uint32_t check;
    std::uint32_t symbol;
    Symbol coeff; // nonzero
};

// Bipartite graph of N symbol-nodes and M constraint-nodes with nonzero
// GF(q) edge labels; equivalently the sparse parity-check matrix H.
// Immutable once built, shared read-only across simulation workers.
class TannerGraph {
public:
    // Validates ranges, nonzero coefficients and absence of parallel edges.
    TannerGraph(Field field, std::uint32_t n_symbols, std::uint32_t n_checks, std::vector<Edge> edges);

    // Progressive edge growth: for every new edge of a symbol-node, connect
    // to a constraint-node at maximum BFS depth in the current subgraph
    // (unreached counts as deepest), tie-broken by minimum current degree,
    // then uniformly at random. Coefficients are drawn uniformly from the
    // nonzero symbols and re-drawn (topology kept) until H has full row
    // rank, a bounded number of times.
    static TannerGraph peg_construct(const Field& field, std::uint32_t n_symbols, std::uint32_t dv,
                                     std::uint32_t dc, Rng& rng);

    const Field& field() const { return field_; }
    std::uint32_t n() const { return n_; }
    std::uint32_t m() const { return m_; }
    std::uint32_t n_edges() const { return static_cast<std::uint32_t>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }

    // Edge ids incident to a node, in edge-list order.
    std::span<const std::uint32_t> symbol_edges(std::uint32_t i) const {
        return {symbol_adj_.data() + symbol_off_[i], symbol_off_[i + 1] - symbol_off_[i]};
    }
    std::span<const std::uint32_t> check_edges(std::uint32_t j) const {
        return {check_adj_.data() + check_off_[j], check_off_[j + 1] - check_off_[j]};
    }

    std::uint32_t symbol_degree(std::uint32_t i) const { return symbol_off_[i + 1] - symbol_off_[i]; }
    std::uint32_t check_degree(std::uint32_t j) const { return check_off_[j + 1] - check_off_[j]; }

    bool is_regular(std::uint32_t dv, std::uint32_t dc) const;

    // Shortest cycle length (even, >= 4) or nullopt for a forest.
    std::optional<int> girth() const;

    // H s^T over GF(q), component per constraint-node.
    std::vector<Symbol> syndrome(std::span<const Symbol> s) const;
    bool syndrome_is_zero(std::span<const Symbol> s) const;

private:
    Field field_;
    std::uint32_t n_;
    std::uint32_t m_;
    std::vector<Edge> edges_;
    std::vector<std::uint32_t> symbol_off_, symbol_adj_;
    std::vector<std::uint32_t> check_off_, check_adj_;

    void build_adjacency();
};

// Systematic encoder from a one-time Gauss-Jordan elimination of H.
// Message symbols occupy the K = N - M non-pivot positions; parity symbols
// are solved from the reduced system. Throws ConstructionError when H is
// rank-deficient.
class Encoder {
public:
    explicit Encoder(const TannerGraph& graph);

    std::uint32_t message_length() const { return k_; }
    std::span<const std::uint32_t> info_positions() const { return info_cols_; }
    std::span<const std::uint32_t> parity_positions() const { return pivot_cols_; }

    std::vector<Symbol> encode(std::span<const Symbol> message) const;

private:
    const TannerGraph* graph_;
    std::uint32_t k_;
    std::vector<std::uint32_t> pivot_cols_; // M entries
    std::vector<std::uint32_t> info_cols_;  // K entries
    std::vector<Symbol> parity_map_;        // M x K, row-major
};

} // namespace nbldpc
