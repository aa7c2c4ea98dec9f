#include <doctest.h>

#include <numeric>

#include "tokmove/steiner.hpp"
#include "util.hpp"

using namespace tokmove;
using namespace testutil;

namespace {

bool tree_is_valid(const Graph& g, const SteinerTree& tree,
                   const std::vector<Vertex>& terminals) {
    if (tree.edges.size() + 1 != tree.vertices.size()) return false;
    for (auto [u, v] : tree.edges)
        if (!g.has_edge(u, v)) return false;
    // connectivity over tree edges only
    std::vector<Vertex> vs = tree.vertices;
    auto idx = [&](Vertex v) {
        return std::lower_bound(vs.begin(), vs.end(), v) - vs.begin();
    };
    std::vector<int> parent(vs.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (auto [u, v] : tree.edges) {
        int a = find(static_cast<int>(idx(u))), b = find(static_cast<int>(idx(v)));
        if (a == b) return false;
        parent[a] = b;
    }
    int root = find(0);
    for (std::size_t i = 1; i < vs.size(); ++i)
        if (find(static_cast<int>(i)) != root) return false;
    for (Vertex t : terminals)
        if (!std::binary_search(vs.begin(), vs.end(), t)) return false;
    return true;
}

/** Smallest connected vertex superset of the terminals, by subset sweep. */
std::optional<int> brute_min(const Graph& g, const std::vector<Vertex>& terminals) {
    const int n = g.vertex_count();
    std::optional<int> best;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        bool all = true;
        for (Vertex t : terminals)
            if (!(mask >> t & 1)) all = false;
        if (!all) continue;
        // connected induced check
        int first = -1, cnt = 0;
        for (int v = 0; v < n; ++v)
            if (mask >> v & 1) {
                if (first < 0) first = v;
                ++cnt;
            }
        if (first < 0) continue;
        std::vector<char> seen(n, 0);
        std::vector<Vertex> stack{static_cast<Vertex>(first)};
        seen[first] = 1;
        int reached = 1;
        while (!stack.empty()) {
            Vertex u = stack.back();
            stack.pop_back();
            for (Vertex w : g.out(u))
                if ((mask >> w & 1) && !seen[w]) {
                    seen[w] = 1;
                    ++reached;
                    stack.push_back(w);
                }
        }
        if (reached == cnt && (!best || cnt < *best)) best = cnt;
    }
    return best;
}

}  // namespace

TEST_CASE("three-path with both ends as terminals needs all three vertices") {
    Graph g = make_graph(3, false, {{0, 1}, {1, 2}});
    auto tree = min_steiner_tree(g, {0, 2});
    REQUIRE(tree.has_value());
    CHECK(tree->size() == 3);
    CHECK(tree->vertices == std::vector<Vertex>{0, 1, 2});
    CHECK(tree_is_valid(g, *tree, {0, 2}));
}

TEST_CASE("star with all leaves as terminals needs the center too") {
    Graph g = make_graph(4, false, {{0, 1}, {0, 2}, {0, 3}});
    auto tree = min_steiner_tree(g, {1, 2, 3});
    REQUIRE(tree.has_value());
    CHECK(tree->size() == 4);
    CHECK(tree_is_valid(g, *tree, {1, 2, 3}));
}

TEST_CASE("single terminal needs only itself") {
    Graph g = make_graph(3, false, {{0, 1}, {1, 2}});
    auto tree = min_steiner_tree(g, {1});
    REQUIRE(tree.has_value());
    CHECK(tree->size() == 1);
    CHECK(tree->edges.empty());
}

TEST_CASE("separated terminals yield no tree") {
    Graph g = make_graph(4, false, {{0, 1}, {2, 3}});
    CHECK_FALSE(min_steiner_tree(g, {0, 3}).has_value());
}

TEST_CASE("exhaustive small graphs match the brute-force minimum") {
    for (int n = 2; n <= 5; ++n) {
        auto slots = edge_slots(n, false);
        for (unsigned long long mask = 0; mask < (1ull << slots.size()); ++mask) {
            Graph g = graph_from_mask(n, false, slots, mask);
            std::vector<Vertex> terms = {0, static_cast<Vertex>(n - 1)};
            auto expect = brute_min(g, terms);
            auto got = min_steiner_tree(g, terms);
            REQUIRE(got.has_value() == expect.has_value());
            if (expect) {
                CHECK(got->size() == *expect);
                CHECK(tree_is_valid(g, *got, terms));
            }
        }
    }
}

TEST_CASE("random graphs with up to four terminals match brute force") {
    SplitMix64 rng(0x8a8a);
    for (int trial = 0; trial < 300; ++trial) {
        int n = 4 + static_cast<int>(rng.below(7));
        Graph g = random_connected_graph(rng, n, false);
        int tc = 2 + static_cast<int>(rng.below(3));
        if (tc > n) tc = n;
        std::vector<Vertex> terms = random_subset(rng, n, tc);
        std::sort(terms.begin(), terms.end());
        auto expect = brute_min(g, terms);
        auto got = min_steiner_tree(g, terms);
        REQUIRE(got.has_value() == expect.has_value());
        if (expect) {
            CHECK(got->size() == *expect);
            CHECK(tree_is_valid(g, *got, terms));
        }
    }
}

TEST_CASE("identical queries return identical trees") {
    Graph g = make_graph(6, false, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}, {1, 4}});
    auto a = min_steiner_tree(g, {0, 3});
    auto b = min_steiner_tree(g, {0, 3});
    REQUIRE(a.has_value());
    CHECK(a->vertices == b->vertices);
    CHECK(a->edges == b->edges);
}
