#include "tokmove/contract.hpp"

#include <algorithm>
#include <set>

#include "tokmove/errors.hpp"

namespace tokmove {

namespace {

using Path = std::vector<Vertex>;

/** Remove cycles from a walk, keeping the first visit of each vertex. */
Path simplify_walk(const Path& walk) {
    Path out;
    std::map<Vertex, std::size_t> seen;
    for (Vertex v : walk) {
        auto it = seen.find(v);
        if (it != seen.end()) {
            while (out.size() > it->second + 1) {
                seen.erase(out.back());
                out.pop_back();
            }
        } else {
            seen[v] = out.size();
            out.push_back(v);
        }
    }
    return out;
}

struct WorkGraph {
    bool directed;
    std::vector<std::set<Vertex>> out, in;
    // directed: keyed (u,v); undirected: keyed (min,max), path stored min -> max
    std::map<std::pair<Vertex, Vertex>, Path> paths;

    std::pair<Vertex, Vertex> key(Vertex u, Vertex v) const {
        if (directed || u < v) return {u, v};
        return {v, u};
    }

    bool has(Vertex u, Vertex v) const { return out[u].count(v) > 0; }

    void add(Vertex u, Vertex v, Path path) {
        out[u].insert(v);
        in[v].insert(u);
        if (!directed) {
            out[v].insert(u);
            in[u].insert(v);
        }
        auto k = key(u, v);
        if (!directed && u > v) std::reverse(path.begin(), path.end());
        paths.emplace(k, std::move(path));
    }

    Path oriented_path(Vertex u, Vertex v) const {
        Path p = paths.at(key(u, v));
        if (!directed && u > v) std::reverse(p.begin(), p.end());
        return p;
    }

    void erase_vertex(Vertex v) {
        for (Vertex w : out[v]) {
            in[w].erase(v);
            if (!directed) out[w].erase(v);
            paths.erase(key(v, w));
        }
        for (Vertex w : in[v]) {
            out[w].erase(v);
            paths.erase(key(w, v));
        }
        out[v].clear();
        in[v].clear();
    }
};

}  // namespace

const std::vector<Vertex>& ContractionMap::edge_path(Vertex ku, Vertex kv,
                                                     std::vector<Vertex>& scratch) const {
    if (directed || ku < kv) return shortcuts.at({ku, kv});
    scratch = shortcuts.at({kv, ku});
    std::reverse(scratch.begin(), scratch.end());
    return scratch;
}

std::pair<Instance, ContractionMap> contract(const Instance& inst) {
    inst.validate();
    if (inst.labelled)
        throw UnsupportedVariantError("contraction is defined for unlabelled variants");
    const Graph& g = inst.graph;
    const Vertex n = g.vertex_count();

    std::vector<char> keep(n, 0);
    for (Vertex v : inst.source.tokens()) keep[v] = 1;
    for (Vertex v : inst.target.tokens()) keep[v] = 1;

    WorkGraph work;
    work.directed = g.directed();
    work.out.resize(n);
    work.in.resize(n);
    for (auto [u, v] : g.edges()) work.add(u, v, {u, v});

    for (Vertex v = 0; v < n; ++v) {
        if (keep[v]) continue;
        std::vector<Vertex> ins(work.in[v].begin(), work.in[v].end());
        std::vector<Vertex> outs(work.out[v].begin(), work.out[v].end());
        for (Vertex a : ins)
            for (Vertex b : outs) {
                if (a == b || work.has(a, b)) continue;
                Path left = work.oriented_path(a, v);
                Path right = work.oriented_path(v, b);
                left.insert(left.end(), right.begin() + 1, right.end());
                work.add(a, b, simplify_walk(left));
            }
        work.erase_vertex(v);
    }

    ContractionMap map;
    map.directed = g.directed();
    map.orig_to_kernel.assign(n, -1);
    for (Vertex v = 0; v < n; ++v)
        if (keep[v]) {
            map.orig_to_kernel[v] = static_cast<Vertex>(map.kept.size());
            map.kept.push_back(v);
        }

    Graph kernel_graph(static_cast<Vertex>(map.kept.size()), g.directed());
    for (const auto& [key, path] : work.paths) {
        Vertex ku = map.orig_to_kernel[key.first];
        Vertex kv = map.orig_to_kernel[key.second];
        kernel_graph.add_edge(ku, kv);
        map.shortcuts.emplace(std::make_pair(ku, kv), path);
    }

    auto remap = [&](const Configuration& c) {
        std::vector<Vertex> t;
        t.reserve(c.size());
        for (Vertex v : c.tokens()) t.push_back(map.orig_to_kernel[v]);
        return Configuration(std::move(t));
    };
    Instance kernel{std::move(kernel_graph), false, remap(inst.source), remap(inst.target),
                    inst.budget};
    return {std::move(kernel), std::move(map)};
}

MoveSequence lift_sequence(const ContractionMap& map, const MoveSequence& seq) {
    MoveSequence out;
    out.moves.reserve(seq.moves.size());
    std::vector<Vertex> scratch;
    for (const Move& mv : seq.moves) {
        if (mv.path.size() < 2) throw InputError("kernel move with degenerate path");
        Path walk;
        for (std::size_t i = 0; i + 1 < mv.path.size(); ++i) {
            const auto& piece = map.edge_path(mv.path[i], mv.path[i + 1], scratch);
            walk.insert(walk.end(), piece.begin() + (i == 0 ? 0 : 1), piece.end());
        }
        Move lifted;
        lifted.from = map.kept.at(mv.from);
        lifted.to = map.kept.at(mv.to);
        lifted.label = mv.label;
        lifted.path = simplify_walk(walk);
        out.moves.push_back(std::move(lifted));
    }
    return out;
}

}  // namespace tokmove
