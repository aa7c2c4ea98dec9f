#include "tokmove/moves.hpp"

#include <algorithm>
#include <queue>

#include "tokmove/errors.hpp"

namespace tokmove {

std::vector<char> occupancy_mask(const Graph& g, const Configuration& c) {
    std::vector<char> occ(g.vertex_count(), 0);
    for (Vertex v : c.tokens()) occ[v] = 1;
    return occ;
}

std::optional<std::vector<Vertex>> find_free_path(const Graph& g, const std::vector<char>& occupied,
                                                  Vertex s, Vertex t) {
    const Vertex n = g.vertex_count();
    if (s < 0 || s >= n || t < 0 || t >= n) throw InputError("path endpoint out of range");
    if (s == t) return std::vector<Vertex>{s};
    std::vector<Vertex> parent(n, -1);
    std::vector<char> seen(n, 0);
    seen[s] = 1;
    std::queue<Vertex> q;
    q.push(s);
    while (!q.empty()) {
        Vertex u = q.front();
        q.pop();
        for (Vertex w : g.out(u)) {
            if (seen[w]) continue;
            if (w != t && occupied[w]) continue;  // endpoints exempt
            seen[w] = 1;
            parent[w] = u;
            if (w == t) {
                std::vector<Vertex> path;
                for (Vertex x = t; x != -1; x = parent[x]) path.push_back(x);
                std::reverse(path.begin(), path.end());
                return path;
            }
            q.push(w);
        }
    }
    return std::nullopt;
}

std::optional<std::vector<Vertex>> find_free_path(const Graph& g,
                                                  const std::vector<Vertex>& occupied, Vertex s,
                                                  Vertex t) {
    std::vector<char> occ(g.vertex_count(), 0);
    for (Vertex v : occupied) occ[v] = 1;
    return find_free_path(g, occ, s, t);
}

std::vector<Vertex> free_reachable(const Graph& g, const std::vector<char>& occupied, Vertex s) {
    std::vector<char> seen(g.vertex_count(), 0);
    seen[s] = 1;
    std::queue<Vertex> q;
    q.push(s);
    std::vector<Vertex> result;
    while (!q.empty()) {
        Vertex u = q.front();
        q.pop();
        for (Vertex w : g.out(u)) {
            if (seen[w] || occupied[w]) continue;
            seen[w] = 1;
            result.push_back(w);
            q.push(w);
        }
    }
    std::sort(result.begin(), result.end());
    return result;
}

Configuration apply_move(const Configuration& c, Vertex from, Vertex to, bool labelled) {
    auto tokens = c.tokens();
    auto it = std::find(tokens.begin(), tokens.end(), from);
    if (it == tokens.end()) throw InputError("no token on move source " + std::to_string(from));
    if (std::find(tokens.begin(), tokens.end(), to) != tokens.end())
        throw InputError("move target occupied: " + std::to_string(to));
    *it = to;
    if (!labelled) std::sort(tokens.begin(), tokens.end());
    return Configuration(tokens);
}

Replay::Replay(const Instance& inst) : inst_(inst) {
    inst.validate();
    occupied_ = occupancy_mask(inst.graph, inst.source);
    positions_ = inst.source.tokens();
    label_at_.assign(inst.graph.vertex_count(), -1);
    for (std::size_t i = 0; i < positions_.size(); ++i) label_at_[positions_[i]] = static_cast<int>(i);
}

std::optional<std::string> Replay::step(const Move& mv, PathCheck mode) {
    const Graph& g = inst_.graph;
    const Vertex n = g.vertex_count();
    if (mv.from < 0 || mv.from >= n || mv.to < 0 || mv.to >= n)
        return "move endpoint out of range";
    if (mv.from == mv.to) return "move source equals target";
    if (!occupied_[mv.from]) return "no token on source " + std::to_string(mv.from);
    if (occupied_[mv.to]) return "target occupied: " + std::to_string(mv.to);
    if (inst_.labelled && mv.label >= 0 && label_at_[mv.from] != mv.label)
        return "token label mismatch on source";

    if (mode == PathCheck::Lenient) {
        auto p = find_free_path(g, occupied_, mv.from, mv.to);
        if (!p) return "no free path from " + std::to_string(mv.from) + " to " + std::to_string(mv.to);
    } else {
        const std::vector<Vertex>& path = mv.path;
        if (path.size() < 2) return "path too short";
        if (path.front() != mv.from || path.back() != mv.to) return "path endpoints disagree with move";
        if (stamp_.size() != static_cast<std::size_t>(n)) stamp_.assign(n, 0);
        ++stamp_counter_;
        for (std::size_t i = 0; i < path.size(); ++i) {
            if (path[i] < 0 || path[i] >= n) return "path vertex out of range";
            if (stamp_[path[i]] == stamp_counter_) return "path repeats a vertex";
            stamp_[path[i]] = stamp_counter_;
            if (i + 1 < path.size() && !g.has_edge(path[i], path[i + 1]))
                return "path uses a missing edge";
            if (i > 0 && i + 1 < path.size() && occupied_[path[i]])
                return "path blocked at vertex " + std::to_string(path[i]);
        }
    }

    occupied_[mv.from] = 0;
    occupied_[mv.to] = 1;
    int tok = label_at_[mv.from];
    label_at_[mv.from] = -1;
    label_at_[mv.to] = tok;
    positions_[tok] = mv.to;
    return std::nullopt;
}

bool Replay::at_target() const {
    if (inst_.labelled) return positions_ == inst_.target.tokens();
    return Configuration(positions_).same_set(inst_.target);
}

Verdict validate_sequence(const Instance& inst, const MoveSequence& seq, PathCheck mode) {
    Replay replay(inst);
    for (std::size_t i = 0; i < seq.moves.size(); ++i) {
        if (auto err = replay.step(seq.moves[i], mode))
            return Verdict{Verdict::Invalid, i, *err};
    }
    if (!replay.at_target()) return Verdict{Verdict::ValidWrongFinal, seq.moves.size(), {}};
    return Verdict{Verdict::ValidReachesTarget, seq.moves.size(), {}};
}

Graph induced_move_graph(const Graph& g, const MoveSequence& seq) {
    Graph sub(g.vertex_count(), g.directed());
    for (const Move& mv : seq.moves)
        for (std::size_t i = 0; i + 1 < mv.path.size(); ++i) {
            if (!g.has_edge(mv.path[i], mv.path[i + 1]))
                throw InputError("sequence path uses an edge absent from the graph");
            sub.add_edge(mv.path[i], mv.path[i + 1]);
        }
    return sub;
}

}  // namespace tokmove
