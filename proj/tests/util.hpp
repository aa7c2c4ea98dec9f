#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "tokmove/instance.hpp"
#include "tokmove/rng.hpp"

namespace testutil {

using namespace tokmove;

inline Graph make_graph(int n, bool directed,
                        const std::vector<std::pair<Vertex, Vertex>>& edges) {
    Graph g(n, directed);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

inline Instance make_instance(Graph g, bool labelled, std::vector<Vertex> s,
                              std::vector<Vertex> t, long long budget) {
    return Instance{std::move(g), labelled, Configuration(std::move(s)),
                    Configuration(std::move(t)), budget};
}

/** Edge slots of an n-vertex graph in a fixed order. */
inline std::vector<std::pair<Vertex, Vertex>> edge_slots(int n, bool directed) {
    std::vector<std::pair<Vertex, Vertex>> slots;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = directed ? 0 : u + 1; v < n; ++v)
            if (u != v) slots.push_back({u, v});
    return slots;
}

inline Graph graph_from_mask(int n, bool directed,
                             const std::vector<std::pair<Vertex, Vertex>>& slots,
                             unsigned long long mask) {
    Graph g(n, directed);
    for (std::size_t i = 0; i < slots.size(); ++i)
        if (mask >> i & 1) g.add_edge(slots[i].first, slots[i].second);
    return g;
}

inline bool weakly_connected(const Graph& g) {
    const int n = g.vertex_count();
    if (n == 0) return true;
    std::vector<char> seen(n, 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    int found = 1;
    auto push = [&](Vertex w) {
        if (!seen[w]) {
            seen[w] = 1;
            ++found;
            stack.push_back(w);
        }
    };
    while (!stack.empty()) {
        Vertex u = stack.back();
        stack.pop_back();
        for (Vertex w : g.out(u)) push(w);
        if (g.directed())
            for (Vertex w : g.in(u)) push(w);
    }
    return found == n;
}

/** Canonical form under vertex relabelling, for dedup of tiny graphs. */
inline std::vector<std::pair<Vertex, Vertex>> canonical_edges(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::optional<std::vector<std::pair<Vertex, Vertex>>> best;
    do {
        std::vector<std::pair<Vertex, Vertex>> mapped;
        for (auto [u, v] : g.edges()) {
            Vertex a = perm[u], b = perm[v];
            if (!g.directed() && a > b) std::swap(a, b);
            mapped.push_back({a, b});
        }
        std::sort(mapped.begin(), mapped.end());
        if (!best || mapped < *best) best = std::move(mapped);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return *best;
}

/** All connected graphs on exactly n vertices, one per isomorphism class. */
inline std::vector<Graph> connected_graphs_up_to_iso(int n, bool directed) {
    auto slots = edge_slots(n, directed);
    std::vector<Graph> out;
    std::vector<std::vector<std::pair<Vertex, Vertex>>> seen;
    for (unsigned long long mask = 0; mask < (1ull << slots.size()); ++mask) {
        Graph g = graph_from_mask(n, directed, slots, mask);
        if (!weakly_connected(g)) continue;
        auto canon = canonical_edges(g);
        if (std::find(seen.begin(), seen.end(), canon) != seen.end()) continue;
        seen.push_back(std::move(canon));
        out.push_back(std::move(g));
    }
    return out;
}

inline Graph random_connected_graph(SplitMix64& rng, int n, bool directed) {
    while (true) {
        auto slots = edge_slots(n, directed);
        Graph g(n, directed);
        // random spanning tree first, then extra edges
        for (Vertex v = 1; v < n; ++v) {
            Vertex u = static_cast<Vertex>(rng.below(v));
            if (directed && rng.below(2)) g.add_edge(v, u);
            else g.add_edge(u, v);
        }
        for (auto [u, v] : slots)
            if (!g.has_edge(u, v) && rng.below(4) == 0) g.add_edge(u, v);
        if (weakly_connected(g)) return g;
    }
}

/** k distinct vertices of an n-vertex graph, uniformly without replacement. */
inline std::vector<Vertex> random_subset(SplitMix64& rng, int n, int k) {
    std::vector<Vertex> all(n);
    std::iota(all.begin(), all.end(), 0);
    for (int i = 0; i < k; ++i)
        std::swap(all[i], all[i + rng.below(n - i)]);
    all.resize(k);
    return all;
}

inline Instance random_instance(SplitMix64& rng, int n, int max_k, long long max_budget,
                                bool directed, bool labelled) {
    Graph g = random_connected_graph(rng, n, directed);
    int k = 1 + static_cast<int>(rng.below(max_k));
    if (k > n) k = n;
    std::vector<Vertex> s = random_subset(rng, n, k);
    std::vector<Vertex> t = random_subset(rng, n, k);
    long long budget = static_cast<long long>(rng.below(max_budget + 1));
    return make_instance(std::move(g), labelled, std::move(s), std::move(t), budget);
}

}  // namespace testutil
