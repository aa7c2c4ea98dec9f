#include "tokmove/transforms.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "tokmove/errors.hpp"

namespace tokmove {

namespace {

constexpr long long kUnreachable = std::numeric_limits<long long>::max() / 4;

/**
 * Fewest obstacle vertices on any directed path from a source set to each
 * vertex, counting every obstacle on the path including its endpoints.
 * 0/1-weighted BFS; sources enter with their own obstacle cost.
 */
std::vector<long long> min_obstacles_from(const Graph& g, const std::vector<Vertex>& sources,
                                          const std::vector<char>& is_obstacle) {
    std::vector<long long> dist(g.vertex_count(), kUnreachable);
    std::deque<Vertex> dq;
    for (Vertex s : sources) {
        long long c = is_obstacle[s] ? 1 : 0;
        if (c < dist[s]) {
            dist[s] = c;
            c ? dq.push_back(s) : dq.push_front(s);
        }
    }
    while (!dq.empty()) {
        Vertex u = dq.front();
        dq.pop_front();
        for (Vertex w : g.out(u)) {
            long long c = dist[u] + (is_obstacle[w] ? 1 : 0);
            if (c < dist[w]) {
                dist[w] = c;
                (c > dist[u]) ? dq.push_back(w) : dq.push_front(w);
            }
        }
    }
    return dist;
}

Instance restrict_instance(const Instance& inst, const std::vector<char>& keep,
                           std::vector<Vertex>& new_to_old) {
    std::vector<Vertex> old_to_new(inst.graph.vertex_count(), -1);
    new_to_old.clear();
    for (Vertex v = 0; v < inst.graph.vertex_count(); ++v)
        if (keep[v]) {
            old_to_new[v] = static_cast<Vertex>(new_to_old.size());
            new_to_old.push_back(v);
        }
    Graph g(static_cast<Vertex>(new_to_old.size()), inst.graph.directed());
    for (auto [u, v] : inst.graph.edges())
        if (keep[u] && keep[v]) g.add_edge(old_to_new[u], old_to_new[v]);
    auto remap = [&](const Configuration& c) {
        std::vector<Vertex> t;
        for (Vertex v : c.tokens())
            if (keep[v]) t.push_back(old_to_new[v]);
        return Configuration(std::move(t));
    };
    return Instance{std::move(g), inst.labelled, remap(inst.source), remap(inst.target),
                    inst.budget};
}

}  // namespace

TransformResult prune_obstacles(const Instance& inst) {
    inst.validate();
    if (inst.variant() != Variant::UDTM)
        throw UnsupportedVariantError("obstacle pruning applies to directed unlabelled instances");
    InstanceStats st = instance_stats(inst);
    if (st.free_count != 0)
        throw UnsupportedVariantError("obstacle pruning expects a contracted instance");

    Instance cur = inst;
    std::vector<Vertex> chain(inst.graph.vertex_count());
    for (Vertex v = 0; v < inst.graph.vertex_count(); ++v) chain[v] = v;

    for (;;) {
        InstanceStats s = instance_stats(cur);
        if (s.obstacles.empty()) break;
        std::vector<char> is_obstacle(cur.graph.vertex_count(), 0);
        for (Vertex v : s.obstacles) is_obstacle[v] = 1;
        auto fwd = min_obstacles_from(cur.graph, s.s_only, is_obstacle);
        auto bwd = min_obstacles_from(cur.graph.reversed(), s.t_only, is_obstacle);

        Vertex victim = -1;
        for (Vertex v : s.obstacles) {
            bool no_in = fwd[v] >= kUnreachable;
            bool no_out = bwd[v] >= kUnreachable;
            bool too_costly = fwd[v] >= cur.budget + 1 && bwd[v] >= cur.budget + 1;
            if (no_in || no_out || too_costly) {
                victim = v;
                break;
            }
        }
        if (victim < 0) break;

        std::vector<char> keep(cur.graph.vertex_count(), 1);
        keep[victim] = 0;
        std::vector<Vertex> sub_map;
        cur = restrict_instance(cur, keep, sub_map);
        std::vector<Vertex> next_chain(sub_map.size());
        for (std::size_t i = 0; i < sub_map.size(); ++i) next_chain[i] = chain[sub_map[i]];
        chain = std::move(next_chain);
    }
    return TransformResult{std::move(cur), std::move(chain), "prune-obstacles"};
}

TransformResult to_max_degree_three(const Instance& inst) {
    inst.validate();
    if (inst.variant() != Variant::UDTM)
        throw UnsupportedVariantError("degree reduction applies to directed unlabelled instances");
    const Graph& g = inst.graph;
    const Vertex n = g.vertex_count();

    // Gadget of v: in-contacts, then the central vertex, then out-contacts,
    // chained by arcs in that order.
    std::vector<Vertex> start(n), central(n);
    Vertex total = 0;
    for (Vertex v = 0; v < n; ++v) {
        start[v] = total;
        central[v] = total + static_cast<Vertex>(g.in(v).size());
        total += static_cast<Vertex>(g.in(v).size() + g.out(v).size() + 1);
    }

    Graph h(total, true);
    std::vector<Vertex> new_to_old(total, -1);
    for (Vertex v = 0; v < n; ++v) {
        new_to_old[central[v]] = v;
        Vertex lo = start[v];
        Vertex hi = start[v] + static_cast<Vertex>(g.in(v).size() + g.out(v).size());
        for (Vertex x = lo; x < hi; ++x) h.add_edge(x, x + 1);
    }
    for (Vertex v = 0; v < n; ++v) {
        const auto& outs = g.out(v);
        for (std::size_t slot = 0; slot < outs.size(); ++slot) {
            Vertex w = outs[slot];
            const auto& ins = g.in(w);
            std::size_t in_slot =
                std::lower_bound(ins.begin(), ins.end(), v) - ins.begin();
            Vertex from = central[v] + 1 + static_cast<Vertex>(slot);
            Vertex to = start[w] + static_cast<Vertex>(in_slot);
            h.add_edge(from, to);
        }
    }

    auto remap = [&](const Configuration& c) {
        std::vector<Vertex> t;
        t.reserve(c.size());
        for (Vertex v : c.tokens()) t.push_back(central[v]);
        return Configuration(std::move(t));
    };
    Instance out{std::move(h), false, remap(inst.source), remap(inst.target), inst.budget};
    return TransformResult{std::move(out), std::move(new_to_old), "degree-three"};
}

TransformResult subdivide(const Instance& inst, int times) {
    inst.validate();
    if (inst.labelled)
        throw UnsupportedVariantError("subdivision applies to unlabelled instances");
    if (times < 1) throw InputError("subdivision count must be at least 1");
    const Graph& g = inst.graph;
    auto edges = g.edges();

    Vertex total = g.vertex_count() + static_cast<Vertex>(edges.size()) * times;
    Graph h(total, g.directed());
    std::vector<Vertex> new_to_old(total, -1);
    for (Vertex v = 0; v < g.vertex_count(); ++v) new_to_old[v] = v;

    Vertex next = g.vertex_count();
    for (auto [u, v] : edges) {
        Vertex prev = u;
        for (int i = 0; i < times; ++i) {
            h.add_edge(prev, next);
            prev = next++;
        }
        h.add_edge(prev, v);
    }
    Instance out{std::move(h), false, inst.source, inst.target, inst.budget};
    return TransformResult{std::move(out), std::move(new_to_old), "subdivide"};
}

}  // namespace tokmove
