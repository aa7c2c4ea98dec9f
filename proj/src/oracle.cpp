#include "tokmove/oracle.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "tokmove/errors.hpp"
#include "tokmove/moves.hpp"

namespace tokmove {

namespace {

using State = std::vector<Vertex>;

struct StateHash {
    std::size_t operator()(const State& s) const {
        std::size_t h = 0x9e3779b97f4a7c15ull;
        for (Vertex v : s) h = (h ^ static_cast<std::size_t>(v)) * 0x100000001b3ull;
        return h;
    }
};

struct SearchTables {
    std::vector<State> states;
    std::vector<std::int64_t> parent;
    std::vector<std::pair<Vertex, Vertex>> via;  // move (from, to) entering the state
    std::unordered_map<State, std::size_t, StateHash> index;

    std::size_t intern(const State& s, std::int64_t par, std::pair<Vertex, Vertex> mv) {
        auto [it, fresh] = index.try_emplace(s, states.size());
        if (fresh) {
            states.push_back(s);
            parent.push_back(par);
            via.push_back(mv);
        }
        return it->second;
    }
};

/** Replays the recorded move chain from the root, deriving each path afresh. */
MoveSequence rebuild_witness(const Instance& inst, const SearchTables& tab, std::size_t goal) {
    std::vector<std::size_t> chain;
    for (std::int64_t i = static_cast<std::int64_t>(goal); i > 0; i = tab.parent[i])
        chain.push_back(static_cast<std::size_t>(i));
    std::reverse(chain.begin(), chain.end());

    MoveSequence seq;
    Replay replay(inst);
    for (std::size_t id : chain) {
        auto [from, to] = tab.via[id];
        auto path = find_free_path(inst.graph, replay.occupied(), from, to);
        if (!path) throw std::logic_error("oracle witness reconstruction lost its path");
        Move mv;
        mv.from = from;
        mv.to = to;
        mv.path = *path;
        if (inst.labelled) {
            for (std::size_t i = 0; i < replay.positions().size(); ++i)
                if (replay.positions()[i] == from) mv.label = static_cast<int>(i);
        }
        if (auto err = replay.step(mv)) throw std::logic_error("oracle witness invalid: " + *err);
        seq.moves.push_back(std::move(mv));
    }
    return seq;
}

void check_cap(const Instance& inst, const OracleOptions& opts) {
    if (configuration_space_size(inst) > opts.cap)
        throw CapExceededError("configuration space exceeds cap of " + std::to_string(opts.cap) +
                               " states");
}

}  // namespace

std::uint64_t configuration_space_size(const Instance& inst) {
    const std::uint64_t n = inst.graph.vertex_count();
    const std::uint64_t k = inst.source.size();
    const std::uint64_t inf = std::numeric_limits<std::uint64_t>::max();
    if (k > n) return inf;
    std::uint64_t count = 1;
    if (inst.labelled) {
        for (std::uint64_t i = 0; i < k; ++i) {
            if (count > inf / (n - i)) return inf;
            count *= n - i;
        }
    } else {
        for (std::uint64_t i = 1; i <= k; ++i) {
            if (count > inf / (n - k + i)) return inf;
            count = count * (n - k + i) / i;
        }
    }
    return count;
}

OracleResult shortest_transforming_sequence(const Instance& inst, const OracleOptions& opts) {
    inst.validate();
    check_cap(inst, opts);
    const Graph& g = inst.graph;

    auto canon = [&](const State& s) {
        if (inst.labelled) return s;
        State c = s;
        std::sort(c.begin(), c.end());
        return c;
    };
    const State start = canon(inst.source.tokens());
    const State goal = canon(inst.target.tokens());

    SearchTables tab;
    tab.intern(start, -1, {-1, -1});
    std::vector<std::uint64_t> dist{0};
    std::size_t head = 0;
    while (head < tab.states.size()) {
        const State cur = tab.states[head];
        const std::uint64_t d = dist[head];
        if (cur == goal) {
            OracleResult res;
            res.reachable = true;
            res.shortest = d;
            if (opts.witness) res.witness = rebuild_witness(inst, tab, head);
            return res;
        }
        std::vector<char> occ(g.vertex_count(), 0);
        for (Vertex v : cur) occ[v] = 1;
        std::vector<std::size_t> order(cur.size());
        for (std::size_t i = 0; i < cur.size(); ++i) order[i] = i;
        if (inst.labelled)
            std::sort(order.begin(), order.end(), [&](auto a, auto b) { return cur[a] < cur[b]; });
        for (std::size_t i : order) {
            const Vertex s = cur[i];
            for (Vertex t : free_reachable(g, occ, s)) {
                State next = cur;
                next[i] = t;
                next = canon(next);
                std::size_t before = tab.states.size();
                std::size_t id = tab.intern(next, static_cast<std::int64_t>(head), {s, t});
                if (id == before) {
                    if (tab.states.size() > opts.cap)
                        throw CapExceededError("visited states exceed cap of " +
                                               std::to_string(opts.cap));
                    dist.push_back(d + 1);
                }
            }
        }
        ++head;
    }
    return OracleResult{};
}

OracleResult shortest_move_once(const Instance& inst, const OracleOptions& opts) {
    inst.validate();
    if (inst.labelled)
        throw UnsupportedVariantError("move-once search is defined for unlabelled variants");
    check_cap(inst, opts);
    const Graph& g = inst.graph;

    // State entries are 2v+moved for the token on vertex v; kept sorted, which
    // orders by vertex since each vertex carries at most one token.
    auto encode = [](const std::vector<Vertex>& vs, const std::vector<char>& moved_flags) {
        State s(vs.size());
        for (std::size_t i = 0; i < vs.size(); ++i) s[i] = 2 * vs[i] + moved_flags[i];
        std::sort(s.begin(), s.end());
        return s;
    };
    const State start = encode(inst.source.tokens(),
                               std::vector<char>(inst.source.size(), 0));
    const std::vector<Vertex> goal_set = inst.target.sorted();

    auto occupies_goal = [&](const State& s) {
        std::vector<Vertex> occ(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) occ[i] = s[i] / 2;
        return occ == goal_set;
    };

    SearchTables tab;
    tab.intern(start, -1, {-1, -1});
    std::vector<std::uint64_t> dist{0};
    std::size_t head = 0;
    while (head < tab.states.size()) {
        const State cur = tab.states[head];
        const std::uint64_t d = dist[head];
        if (occupies_goal(cur)) {
            OracleResult res;
            res.reachable = true;
            res.shortest = d;
            if (opts.witness) res.witness = rebuild_witness(inst, tab, head);
            return res;
        }
        std::vector<char> occ(g.vertex_count(), 0);
        for (Vertex e : cur) occ[e / 2] = 1;
        for (std::size_t i = 0; i < cur.size(); ++i) {
            if (cur[i] & 1) continue;  // this token already moved
            const Vertex s = cur[i] / 2;
            for (Vertex t : free_reachable(g, occ, s)) {
                State next = cur;
                next[i] = 2 * t + 1;
                std::sort(next.begin(), next.end());
                std::size_t before = tab.states.size();
                std::size_t id = tab.intern(next, static_cast<std::int64_t>(head), {s, t});
                if (id == before) {
                    if (tab.states.size() > opts.cap)
                        throw CapExceededError("visited states exceed cap of " +
                                               std::to_string(opts.cap));
                    dist.push_back(d + 1);
                }
            }
        }
        ++head;
    }
    return OracleResult{};
}

}  // namespace tokmove
