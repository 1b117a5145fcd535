#include "interleaver.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "errors.hpp"
#include "girth_util.hpp"

namespace nbldpc {

const char* to_string(InterleaverKind k) {
    switch (k) {
        case InterleaverKind::identity: return "identity";
        case InterleaverKind::random: return "random";
        case InterleaverKind::peg: return "peg";
    }
    return "?";
}

std::optional<InterleaverKind> interleaver_kind_from_string(std::string_view s) {
    if (s == "identity") return InterleaverKind::identity;
    if (s == "random") return InterleaverKind::random;
    if (s == "peg") return InterleaverKind::peg;
    return std::nullopt;
}

InterleaverPattern::InterleaverPattern(InterleaverKind kind, std::uint32_t p, std::uint32_t m,
                                       std::vector<std::uint32_t> perm, std::uint64_t seed)
    : kind_(kind), n_(static_cast<std::uint32_t>(perm.size())), p_(p), m_(m), seed_(seed),
      perm_(std::move(perm)) {
    if (p_ == 0 || m_ == 0 || n_ == 0) throw InvalidArgument("interleaver: empty pattern");
    if (n_ % p_ != 0 || n_ % m_ != 0)
        throw InvalidArgument("interleaver: n = " + std::to_string(n_) + " not divisible by p = " +
                              std::to_string(p_) + " and m = " + std::to_string(m_));
    check_bijection();
    rebuild_edges_from_perm();
}

void InterleaverPattern::check_bijection() const {
    std::vector<bool> hit(n_, false);
    for (std::uint32_t v : perm_) {
        if (v >= n_ || hit[v]) throw InvalidArgument("interleaver: perm is not a bijection on [0, n)");
        hit[v] = true;
    }
}

void InterleaverPattern::rebuild_edges_from_perm() {
    edges_.resize(n_);
    for (std::uint32_t t = 0; t < n_; ++t) edges_[t] = {perm_[t] / m_, t / p_};
}

InterleaverPattern InterleaverPattern::identity(std::uint32_t n_symbols, std::uint32_t p, std::uint32_t m) {
    if (p != m)
        throw InvalidArgument("interleaver: identity pattern needs m = p (got p = " + std::to_string(p) +
                              ", m = " + std::to_string(m) + ")");
    std::vector<std::uint32_t> perm(static_cast<std::size_t>(n_symbols) * p);
    for (std::uint32_t t = 0; t < perm.size(); ++t) perm[t] = t;
    return InterleaverPattern(InterleaverKind::identity, p, m, std::move(perm), 0);
}

InterleaverPattern InterleaverPattern::random(std::uint32_t n_symbols, std::uint32_t p, std::uint32_t m,
                                              std::uint64_t seed) {
    const std::uint64_t n = static_cast<std::uint64_t>(n_symbols) * p;
    if (n == 0 || n % m != 0)
        throw InvalidArgument("interleaver: N*p must be a positive multiple of m");
    std::vector<std::uint32_t> perm(n);
    for (std::uint32_t t = 0; t < n; ++t) perm[t] = t;
    Rng rng(seed);
    for (std::uint32_t t = static_cast<std::uint32_t>(n) - 1; t > 0; --t)
        std::swap(perm[t], perm[rng.below(t + 1)]);
    return InterleaverPattern(InterleaverKind::random, p, m, std::move(perm), seed);
}

namespace {

// Node ids of the global graph: [0, N_m) modulation, [N_m, N_m+N) symbol,
// [N_m+N, N_m+N+M) constraint.
struct GlobalBfs {
    const TannerGraph& graph;
    std::uint32_t n_m, n, m_checks;
    const std::vector<std::vector<std::uint32_t>>& mod_to_sym;
    const std::vector<std::vector<std::uint32_t>>& sym_to_mod;
    std::vector<int> dist;
    std::vector<std::uint32_t> queue;

    GlobalBfs(const TannerGraph& g, std::uint32_t nm, const std::vector<std::vector<std::uint32_t>>& m2s,
              const std::vector<std::vector<std::uint32_t>>& s2m)
        : graph(g), n_m(nm), n(g.n()), m_checks(g.m()), mod_to_sym(m2s), sym_to_mod(s2m),
          dist(nm + g.n() + g.m()), queue(nm + g.n() + g.m()) {}

    // Fills dist from modulation-node root; -1 = unreached.
    void run(std::uint32_t root_mod) {
        std::fill(dist.begin(), dist.end(), -1);
        std::size_t head = 0, tail = 0;
        dist[root_mod] = 0;
        queue[tail++] = root_mod;
        while (head < tail) {
            const std::uint32_t u = queue[head++];
            const int d = dist[u] + 1;
            auto push = [&](std::uint32_t w) {
                if (dist[w] < 0) {
                    dist[w] = d;
                    queue[tail++] = w;
                }
            };
            if (u < n_m) {
                for (std::uint32_t s : mod_to_sym[u]) push(n_m + s);
            } else if (u < n_m + n) {
                const std::uint32_t s = u - n_m;
                for (std::uint32_t k : sym_to_mod[s]) push(k);
                for (std::uint32_t e : graph.symbol_edges(s)) push(n_m + n + graph.edges()[e].check);
            } else {
                const std::uint32_t c = u - n_m - n;
                for (std::uint32_t e : graph.check_edges(c)) push(n_m + graph.edges()[e].symbol);
            }
        }
    }

    int symbol_depth(std::uint32_t s) const { return dist[n_m + s]; }
};

} // namespace

InterleaverPattern InterleaverPattern::peg(const TannerGraph& graph, std::uint32_t m, std::uint64_t seed,
                                           const PegPatternOptions& opts) {
    const std::uint32_t n_symbols = graph.n();
    const std::uint32_t p = graph.field().p();
    const std::uint64_t n64 = static_cast<std::uint64_t>(n_symbols) * p;
    if (m == 0 || n64 % m != 0)
        throw InvalidArgument("interleaver: N*p = " + std::to_string(n64) + " not divisible by m = " +
                              std::to_string(m));
    const std::uint32_t n = static_cast<std::uint32_t>(n64);
    const std::uint32_t n_m = n / m;

    Rng rng(seed);

    std::vector<std::uint32_t> order(n_m);
    for (std::uint32_t k = 0; k < n_m; ++k) order[k] = k;
    if (opts.shuffle_order)
        for (std::uint32_t t = n_m - 1; t > 0; --t) std::swap(order[t], order[rng.below(t + 1)]);

    std::vector<std::vector<std::uint32_t>> mod_to_sym(n_m), sym_to_mod(n_symbols);
    std::vector<std::uint32_t> sym_fill(n_symbols, 0);
    std::vector<IncidenceEdge> placed;
    placed.reserve(n);
    GlobalBfs bfs(graph, n_m, mod_to_sym, sym_to_mod);
    std::vector<std::uint32_t> candidates;

    auto connect = [&](std::uint32_t k, std::uint32_t s) {
        mod_to_sym[k].push_back(s);
        sym_to_mod[s].push_back(k);
        ++sym_fill[s];
        placed.push_back({k, s});
    };

    for (std::uint32_t k : order) {
        // first edge: random lowest-degree symbol-node
        candidates.clear();
        std::uint32_t lowest = std::numeric_limits<std::uint32_t>::max();
        for (std::uint32_t s = 0; s < n_symbols; ++s) {
            if (sym_fill[s] >= p) continue;
            if (sym_fill[s] < lowest) {
                lowest = sym_fill[s];
                candidates.clear();
            }
            if (sym_fill[s] == lowest) candidates.push_back(s);
        }
        if (candidates.empty()) throw ConstructionError("interleaver: capacity exhausted");
        connect(k, candidates[rng.below(candidates.size())]);

        for (std::uint32_t t = 1; t < m; ++t) {
            bfs.run(k);
            // deepest symbol-node with spare capacity; unreached counts as
            // deepest, lowest fill and then chance break ties. Saturated
            // nodes still relay distance inside the BFS.
            candidates.clear();
            long long best_depth = -2;
            std::uint32_t best_fill = 0;
            for (std::uint32_t s = 0; s < n_symbols; ++s) {
                if (sym_fill[s] >= p) continue;
                const int ds = bfs.symbol_depth(s);
                const long long d =
                    ds < 0 ? std::numeric_limits<long long>::max() : static_cast<long long>(ds);
                if (d > best_depth || (d == best_depth && sym_fill[s] < best_fill)) {
                    best_depth = d;
                    best_fill = sym_fill[s];
                    candidates.clear();
                    candidates.push_back(s);
                } else if (d == best_depth && sym_fill[s] == best_fill) {
                    candidates.push_back(s);
                }
            }
            if (candidates.empty()) throw ConstructionError("interleaver: capacity exhausted");
            connect(k, candidates[rng.below(candidates.size())]);
        }
    }

    // Sequential bit fill: the t-th established edge of a symbol carries its
    // t-th bit (LSB first); modulation bits fill in placement order too.
    std::vector<std::uint32_t> perm(n);
    std::vector<std::uint32_t> sym_pos(n_symbols, 0), mod_pos(n_m, 0);
    for (const IncidenceEdge& e : placed) {
        const std::uint32_t t = sym_pos[e.symbol]++;
        const std::uint32_t u = mod_pos[e.mod_node]++;
        perm[e.symbol * p + t] = e.mod_node * m + u;
    }

    if (opts.local_scramble) {
        for (std::uint32_t s = 0; s < n_symbols; ++s) {
            std::uint32_t* base = perm.data() + static_cast<std::size_t>(s) * p;
            for (std::uint32_t t = p - 1; t > 0; --t)
                std::swap(base[t], base[rng.below(t + 1)]);
        }
    }

    InterleaverPattern pat(InterleaverKind::peg, p, m, std::move(perm), seed);
    pat.edges_ = std::move(placed); // keep placement order for inspection
    return pat;
}

void InterleaverPattern::apply(std::span<const std::uint8_t> coded, std::span<std::uint8_t> modulated) const {
    if (coded.size() != n_ || modulated.size() != n_)
        throw InvalidArgument("interleaver: apply expects " + std::to_string(n_) + " bits");
    for (std::uint32_t t = 0; t < n_; ++t) modulated[perm_[t]] = coded[t];
}

void InterleaverPattern::deapply(std::span<const std::uint8_t> modulated, std::span<std::uint8_t> coded) const {
    if (coded.size() != n_ || modulated.size() != n_)
        throw InvalidArgument("interleaver: deapply expects " + std::to_string(n_) + " bits");
    for (std::uint32_t t = 0; t < n_; ++t) coded[t] = modulated[perm_[t]];
}

std::uint32_t multi_edge_pairs(const InterleaverPattern& pat) {
    std::vector<std::uint64_t> keys;
    keys.reserve(pat.incidences().size());
    for (const auto& e : pat.incidences())
        keys.push_back((static_cast<std::uint64_t>(e.mod_node) << 32) | e.symbol);
    std::sort(keys.begin(), keys.end());
    std::uint32_t pairs = 0;
    for (std::size_t t = 0; t + 1 < keys.size();) {
        std::size_t r = t + 1;
        while (r < keys.size() && keys[r] == keys[t]) ++r;
        if (r - t > 1) ++pairs;
        t = r;
    }
    return pairs;
}

std::optional<int> global_girth(const TannerGraph& graph, const InterleaverPattern& pat) {
    if (pat.n_symbols() != graph.n() || pat.p() != graph.field().p())
        throw InvalidArgument("global_girth: pattern does not match code dimensions");
    const std::uint32_t n_m = pat.n_mod_symbols();
    const std::uint32_t n = graph.n();
    const std::uint32_t m_checks = graph.m();

    std::vector<std::uint64_t> keys;
    keys.reserve(pat.incidences().size());
    for (const auto& e : pat.incidences())
        keys.push_back((static_cast<std::uint64_t>(e.mod_node) << 32) | e.symbol);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> adj(n_m + n + m_checks);
    std::uint32_t edge_id = 0;
    for (std::uint64_t key : keys) {
        const std::uint32_t k = static_cast<std::uint32_t>(key >> 32);
        const std::uint32_t s = static_cast<std::uint32_t>(key & 0xffffffffu);
        adj[k].emplace_back(n_m + s, edge_id);
        adj[n_m + s].emplace_back(k, edge_id);
        ++edge_id;
    }
    for (const Edge& e : graph.edges()) {
        adj[n_m + e.symbol].emplace_back(n_m + n + e.check, edge_id);
        adj[n_m + n + e.check].emplace_back(n_m + e.symbol, edge_id);
        ++edge_id;
    }
    return detail::shortest_cycle(adj);
}

} // namespace nbldpc
