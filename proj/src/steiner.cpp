#include "tokmove/steiner.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <set>

#include "tokmove/errors.hpp"

namespace tokmove {

namespace {

constexpr int kInf = std::numeric_limits<int>::max() / 4;

struct Choice {
    enum Kind : std::uint8_t { None, Base, Attach, Split } kind = None;
    Vertex via = -1;  // Attach: neighbour the edge came from
    int sub = 0;      // Split: one half of the mask
};

/**
 * dp[mask][v] = fewest edges in a tree containing v and the terminals in mask.
 * Masks fill in ascending order: merge two halves at a shared vertex, then
 * relax outward edge by edge in rounds of increasing dp value, taking the
 * lowest-index predecessor first so reconstruction is unambiguous.
 */
struct Solver {
    const Graph& g;
    const std::vector<Vertex>& terminals;
    int p;
    std::vector<std::vector<int>> dp;
    std::vector<std::vector<Choice>> choice;

    Solver(const Graph& gr, const std::vector<Vertex>& term)
        : g(gr), terminals(term), p(static_cast<int>(term.size())) {
        const int full = 1 << p;
        dp.assign(full, std::vector<int>(g.vertex_count(), kInf));
        choice.assign(full, std::vector<Choice>(g.vertex_count()));
        for (int mask = 1; mask < full; ++mask) fill(mask);
    }

    void fill(int mask) {
        auto& cur = dp[mask];
        auto& why = choice[mask];
        if ((mask & (mask - 1)) == 0) {
            int i = std::countr_zero(static_cast<unsigned>(mask));
            cur[terminals[i]] = 0;
            why[terminals[i]] = {Choice::Base, -1, 0};
        } else {
            for (int sub = (mask - 1) & mask; sub > 0; sub = (sub - 1) & mask) {
                if (sub < (mask ^ sub)) break;  // each split once, larger half first
                const auto& a = dp[sub];
                const auto& b = dp[mask ^ sub];
                for (Vertex v = 0; v < g.vertex_count(); ++v) {
                    if (a[v] >= kInf || b[v] >= kInf) continue;
                    int c = a[v] + b[v];
                    if (c < cur[v]) {
                        cur[v] = c;
                        why[v] = {Choice::Split, -1, sub};
                    }
                }
            }
        }
        // unit-weight relaxation: bucket rounds by dp value
        int maxval = 0;
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            if (cur[v] < kInf) maxval = std::max(maxval, cur[v]);
        for (int val = 0; val <= maxval; ++val) {
            for (Vertex v = 0; v < g.vertex_count(); ++v) {
                if (cur[v] != val) continue;
                for (Vertex w : g.out(v)) {
                    if (val + 1 < cur[w]) {
                        cur[w] = val + 1;
                        why[w] = {Choice::Attach, v, 0};
                        maxval = std::max(maxval, val + 1);
                    }
                }
            }
        }
    }

    void rebuild(int mask, Vertex v, std::set<std::pair<Vertex, Vertex>>& edges) const {
        const Choice& c = choice[mask][v];
        switch (c.kind) {
            case Choice::Base:
                return;
            case Choice::Attach:
                edges.insert({std::min(v, c.via), std::max(v, c.via)});
                rebuild(mask, c.via, edges);
                return;
            case Choice::Split:
                rebuild(c.sub, v, edges);
                rebuild(mask ^ c.sub, v, edges);
                return;
            case Choice::None:
                throw std::logic_error("steiner reconstruction on unreached state");
        }
    }
};

}  // namespace

std::optional<SteinerTree> min_steiner_tree(const Graph& g, const std::vector<Vertex>& terminals) {
    if (g.directed())
        throw UnsupportedVariantError("steiner trees are computed on undirected graphs");
    if (terminals.empty()) throw InputError("empty terminal set");
    std::vector<Vertex> term = terminals;
    std::sort(term.begin(), term.end());
    term.erase(std::unique(term.begin(), term.end()), term.end());
    for (Vertex t : term)
        if (t < 0 || t >= g.vertex_count()) throw InputError("terminal out of range");

    if (term.size() == 1) return SteinerTree{{term[0]}, {}};

    Solver solver(g, term);
    const int full = (1 << term.size()) - 1;
    const Vertex root = term[0];
    if (solver.dp[full][root] >= kInf) return std::nullopt;

    std::set<std::pair<Vertex, Vertex>> edges;
    solver.rebuild(full, root, edges);

    SteinerTree tree;
    std::set<Vertex> verts;
    for (auto [u, v] : edges) {
        verts.insert(u);
        verts.insert(v);
        tree.edges.emplace_back(u, v);
    }
    tree.vertices.assign(verts.begin(), verts.end());
    return tree;
}

}  // namespace tokmove
