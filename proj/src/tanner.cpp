#include "tanner.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "errors.hpp"
#include "girth_util.hpp"

namespace nbldpc {

TannerGraph::TannerGraph(Field field, std::uint32_t n_symbols, std::uint32_t n_checks, std::vector<Edge> edges)
    : field_(std::move(field)), n_(n_symbols), m_(n_checks), edges_(std::move(edges)) {
    if (n_ == 0 || m_ == 0) throw InvalidArgument("tanner: empty graph");

    // Canonical edge order makes decode schedules and file bytes independent
    // of construction history.
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
        return a.check != b.check ? a.check < b.check : a.symbol < b.symbol;
    });

    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const Edge& ed = edges_[e];
        if (ed.symbol >= n_ || ed.check >= m_) throw InvalidArgument("tanner: edge index out of range");
        if (ed.coeff == 0 || ed.coeff >= field_.q()) throw InvalidArgument("tanner: edge coefficient out of range");
        if (e > 0 && edges_[e - 1].check == ed.check && edges_[e - 1].symbol == ed.symbol)
            throw InvalidArgument("tanner: parallel edge between symbol " + std::to_string(ed.symbol) +
                                  " and check " + std::to_string(ed.check));
    }
    build_adjacency();
}

void TannerGraph::build_adjacency() {
    symbol_off_.assign(n_ + 1, 0);
    check_off_.assign(m_ + 1, 0);
    for (const Edge& e : edges_) {
        ++symbol_off_[e.symbol + 1];
        ++check_off_[e.check + 1];
    }
    for (std::uint32_t i = 0; i < n_; ++i) symbol_off_[i + 1] += symbol_off_[i];
    for (std::uint32_t j = 0; j < m_; ++j) check_off_[j + 1] += check_off_[j];

    symbol_adj_.resize(edges_.size());
    check_adj_.resize(edges_.size());
    std::vector<std::uint32_t> si(n_, 0), ci(m_, 0);
    for (std::uint32_t e = 0; e < edges_.size(); ++e) {
        symbol_adj_[symbol_off_[edges_[e].symbol] + si[edges_[e].symbol]++] = e;
        check_adj_[check_off_[edges_[e].check] + ci[edges_[e].check]++] = e;
    }
}

bool TannerGraph::is_regular(std::uint32_t dv, std::uint32_t dc) const {
    for (std::uint32_t i = 0; i < n_; ++i)
        if (symbol_degree(i) != dv) return false;
    for (std::uint32_t j = 0; j < m_; ++j)
        if (check_degree(j) != dc) return false;
    return true;
}

namespace {

struct PegState {
    std::uint32_t n, m;
    std::vector<std::uint32_t> sym_deg, chk_deg;
    // adjacency by node, edge targets only (coefficients come later)
    std::vector<std::vector<std::uint32_t>> sym_to_chk;
    std::vector<std::vector<std::uint32_t>> chk_to_sym;

    PegState(std::uint32_t n_, std::uint32_t m_)
        : n(n_), m(m_), sym_deg(n_, 0), chk_deg(m_, 0), sym_to_chk(n_), chk_to_sym(m_) {}

    // BFS depth of every check from symbol root; -1 = unreached.
    void check_depths(std::uint32_t root, std::vector<int>& depth_chk) const {
        depth_chk.assign(m, -1);
        std::vector<int> depth_sym(n, -1);
        depth_sym[root] = 0;
        // frontier alternates symbol / check layers
        std::vector<std::uint32_t> cur = {root}, next;
        int d = 0;
        bool symbols_layer = true;
        while (!cur.empty()) {
            next.clear();
            ++d;
            if (symbols_layer) {
                for (std::uint32_t s : cur)
                    for (std::uint32_t c : sym_to_chk[s])
                        if (depth_chk[c] < 0) {
                            depth_chk[c] = d;
                            next.push_back(c);
                        }
            } else {
                for (std::uint32_t c : cur)
                    for (std::uint32_t s : chk_to_sym[c])
                        if (depth_sym[s] < 0) {
                            depth_sym[s] = d;
                            next.push_back(s);
                        }
            }
            cur.swap(next);
            symbols_layer = !symbols_layer;
        }
    }
};

} // namespace

TannerGraph TannerGraph::peg_construct(const Field& field, std::uint32_t n_symbols, std::uint32_t dv,
                                       std::uint32_t dc, Rng& rng) {
    if (n_symbols == 0 || dv == 0 || dc == 0) throw InvalidArgument("peg: degrees and size must be positive");
    const std::uint64_t total = static_cast<std::uint64_t>(n_symbols) * dv;
    if (total % dc != 0)
        throw ConstructionError("peg: N*dv = " + std::to_string(total) + " not divisible by dc = " +
                                std::to_string(dc));
    const std::uint32_t n_checks = static_cast<std::uint32_t>(total / dc);
    if (dc > n_symbols || dv > n_checks)
        throw ConstructionError("peg: degree exceeds opposite-side node count");

    constexpr int kMaxAttempts = 64;
    constexpr int kMaxCoeffRedraws = 32;

    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        PegState st(n_symbols, n_checks);
        std::vector<int> depth_chk;
        std::vector<std::uint32_t> candidates;
        bool dead_end = false;

        for (std::uint32_t i = 0; i < n_symbols && !dead_end; ++i) {
            for (std::uint32_t t = 0; t < dv; ++t) {
                st.check_depths(i, depth_chk);
                // Among checks with spare capacity and no edge to i yet, keep
                // the deepest (unreached beats everything), then the least
                // connected, then pick uniformly.
                candidates.clear();
                long long best_depth = -2;
                std::uint32_t best_deg = 0;
                for (std::uint32_t c = 0; c < n_checks; ++c) {
                    if (st.chk_deg[c] >= dc) continue;
                    bool adjacent = false;
                    for (std::uint32_t cc : st.sym_to_chk[i])
                        if (cc == c) {
                            adjacent = true;
                            break;
                        }
                    if (adjacent) continue;
                    const long long d = depth_chk[c] < 0 ? std::numeric_limits<long long>::max()
                                                         : static_cast<long long>(depth_chk[c]);
                    if (d > best_depth || (d == best_depth && st.chk_deg[c] < best_deg)) {
                        best_depth = d;
                        best_deg = st.chk_deg[c];
                        candidates.clear();
                        candidates.push_back(c);
                    } else if (d == best_depth && st.chk_deg[c] == best_deg) {
                        candidates.push_back(c);
                    }
                }
                if (candidates.empty()) {
                    dead_end = true; // remaining capacity sits only on already-adjacent checks
                    break;
                }
                const std::uint32_t c = candidates[rng.below(candidates.size())];
                st.sym_to_chk[i].push_back(c);
                st.chk_to_sym[c].push_back(i);
                ++st.sym_deg[i];
                ++st.chk_deg[c];
            }
        }
        if (dead_end) continue;

        std::vector<Edge> edges;
        edges.reserve(total);
        for (std::uint32_t i = 0; i < n_symbols; ++i)
            for (std::uint32_t c : st.sym_to_chk[i]) edges.push_back({c, i, 0});

        // Coefficients: uniform over nonzero symbols, re-drawn wholesale if H
        // comes out rank-deficient; topology (hence girth) is preserved.
        for (int redraw = 0; redraw < kMaxCoeffRedraws; ++redraw) {
            for (Edge& e : edges) e.coeff = static_cast<Symbol>(1 + rng.below(field.q() - 1));
            TannerGraph g(field, n_symbols, n_checks, edges);
            try {
                Encoder probe(g);
                (void)probe;
                return g;
            } catch (const ConstructionError&) {
                // redraw
            }
        }
        throw ConstructionError("peg: H rank-deficient after coefficient redraws");
    }
    throw ConstructionError("peg: edge placement dead-ended on every attempt");
}

std::optional<int> TannerGraph::girth() const {
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> adj(n_ + m_);
    for (std::uint32_t e = 0; e < edges_.size(); ++e) {
        adj[edges_[e].symbol].emplace_back(n_ + edges_[e].check, e);
        adj[n_ + edges_[e].check].emplace_back(edges_[e].symbol, e);
    }
    return detail::shortest_cycle(adj);
}

std::vector<Symbol> TannerGraph::syndrome(std::span<const Symbol> s) const {
    if (s.size() != n_) throw InvalidArgument("syndrome: expected " + std::to_string(n_) + " symbols");
    std::vector<Symbol> syn(m_, 0);
    for (const Edge& e : edges_) syn[e.check] = static_cast<Symbol>(syn[e.check] ^ field_.mul(e.coeff, s[e.symbol]));
    return syn;
}

bool TannerGraph::syndrome_is_zero(std::span<const Symbol> s) const {
    const std::vector<Symbol> syn = syndrome(s);
    for (Symbol v : syn)
        if (v != 0) return false;
    return true;
}

Encoder::Encoder(const TannerGraph& graph) : graph_(&graph) {
    const Field& f = graph.field();
    const std::uint32_t n = graph.n(), m = graph.m();
    if (m > n) throw ConstructionError("encode: more constraints than symbols");

    std::vector<Symbol> mat(static_cast<std::size_t>(m) * n, 0);
    for (const Edge& e : graph.edges()) mat[static_cast<std::size_t>(e.check) * n + e.symbol] = e.coeff;
    auto row = [&](std::uint32_t r) { return mat.data() + static_cast<std::size_t>(r) * n; };

    // Gauss-Jordan to reduced row echelon form; pivot columns become parity
    // positions, the rest carry the message.
    std::uint32_t rank = 0;
    pivot_cols_.reserve(m);
    for (std::uint32_t c = 0; c < n && rank < m; ++c) {
        std::uint32_t piv = rank;
        while (piv < m && row(piv)[c] == 0) ++piv;
        if (piv == m) continue;
        if (piv != rank) std::swap_ranges(row(piv), row(piv) + n, row(rank));
        const Symbol scale = f.inv(row(rank)[c]);
        for (std::uint32_t cc = c; cc < n; ++cc) row(rank)[cc] = f.mul(scale, row(rank)[cc]);
        for (std::uint32_t r = 0; r < m; ++r) {
            if (r == rank || row(r)[c] == 0) continue;
            const Symbol factor = row(r)[c];
            for (std::uint32_t cc = c; cc < n; ++cc)
                row(r)[cc] = static_cast<Symbol>(row(r)[cc] ^ f.mul(factor, row(rank)[cc]));
        }
        pivot_cols_.push_back(c);
        ++rank;
    }
    if (rank < m)
        throw ConstructionError("encode: H is rank-deficient (rank " + std::to_string(rank) + " of " +
                                std::to_string(m) + ")");

    k_ = n - m;
    info_cols_.reserve(k_);
    std::vector<bool> is_pivot(n, false);
    for (std::uint32_t c : pivot_cols_) is_pivot[c] = true;
    for (std::uint32_t c = 0; c < n; ++c)
        if (!is_pivot[c]) info_cols_.push_back(c);

    parity_map_.assign(static_cast<std::size_t>(m) * k_, 0);
    for (std::uint32_t r = 0; r < m; ++r)
        for (std::uint32_t t = 0; t < k_; ++t)
            parity_map_[static_cast<std::size_t>(r) * k_ + t] = row(r)[info_cols_[t]];
}

std::vector<Symbol> Encoder::encode(std::span<const Symbol> message) const {
    if (message.size() != k_) throw InvalidArgument("encode: expected " + std::to_string(k_) + " message symbols");
    const Field& f = graph_->field();
    std::vector<Symbol> cw(graph_->n(), 0);
    for (std::uint32_t t = 0; t < k_; ++t) {
        if (message[t] >= f.q()) throw InvalidArgument("encode: message symbol out of field range");
        cw[info_cols_[t]] = message[t];
    }
    for (std::uint32_t r = 0; r < graph_->m(); ++r) {
        Symbol acc = 0;
        const Symbol* mrow = parity_map_.data() + static_cast<std::size_t>(r) * k_;
        for (std::uint32_t t = 0; t < k_; ++t) acc = static_cast<Symbol>(acc ^ f.mul(mrow[t], message[t]));
        cw[pivot_cols_[r]] = acc;
    }
    return cw;
}

} // namespace nbldpc
