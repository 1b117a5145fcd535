#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

namespace nbldpc::detail {

// Shortest cycle of an undirected simple graph given as adjacency lists of
// (neighbor, edge id). BFS from every vertex; a non-tree edge seen from u
// closes a cycle of length dist[u] + dist[w] + 1, and the minimum over all
// sources is exact because every vertex of a shortest cycle is a source.
inline std::optional<int> shortest_cycle(
    const std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>>& adj) {
    const std::uint32_t v = static_cast<std::uint32_t>(adj.size());
    int best = std::numeric_limits<int>::max();
    std::vector<int> dist(v);
    std::vector<std::uint32_t> parent_edge(v), queue(v);

    for (std::uint32_t src = 0; src < v && best > 3; ++src) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[src] = 0;
        parent_edge[src] = std::numeric_limits<std::uint32_t>::max();
        std::size_t head = 0, tail = 0;
        queue[tail++] = src;
        while (head < tail) {
            const std::uint32_t u = queue[head++];
            if (2 * dist[u] >= best) break; // deeper layers cannot improve
            for (const auto& [w, e] : adj[u]) {
                if (e == parent_edge[u]) continue;
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    parent_edge[w] = e;
                    queue[tail++] = w;
                } else {
                    best = std::min(best, dist[u] + dist[w] + 1);
                }
            }
        }
    }
    if (best == std::numeric_limits<int>::max()) return std::nullopt;
    return best;
}

} // namespace nbldpc::detail
