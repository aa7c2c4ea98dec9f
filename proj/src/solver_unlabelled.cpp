#include "tokmove/solver_unlabelled.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

#include "tokmove/contract.hpp"
#include "tokmove/errors.hpp"
#include "tokmove/moves.hpp"
#include "tokmove/oracle.hpp"

namespace tokmove {

namespace {

std::vector<Vertex> sorted_unique(std::vector<Vertex> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

bool leaves_within(const Graph& induced, const std::vector<Vertex>& allowed_sorted) {
    auto deg = underlying_degrees(induced);
    for (Vertex v = 0; v < induced.vertex_count(); ++v)
        if (deg[v] == 1 && !std::binary_search(allowed_sorted.begin(), allowed_sorted.end(), v))
            return false;
    return true;
}

/**
 * Depth-first enumeration of valid sequences in which no token moves twice.
 * Candidates of exactly `limit` moves ending on the goal set are passed to the
 * callback in deterministic order; the callback returns true to stop.
 */
struct MoveOnceEnumerator {
    const Graph& g;
    std::vector<char> occ;
    std::vector<char> moved;
    std::vector<char> goal_mask;
    std::size_t limit;
    bool require_all_move;
    std::function<bool(const std::vector<Move>&)> cb;

    std::vector<Move> cur;
    int misplaced = 0;      // occupied vertices outside the goal set
    int unmoved_tokens = 0;
    std::uint64_t nodes = 0;
    std::uint64_t node_cap = 4'000'000;
    bool stopped = false;

    MoveOnceEnumerator(const Graph& gr, const Configuration& s, const Configuration& t,
                       std::size_t lim, bool all_move,
                       std::function<bool(const std::vector<Move>&)> callback)
        : g(gr), occ(occupancy_mask(gr, s)), moved(gr.vertex_count(), 0),
          goal_mask(gr.vertex_count(), 0), limit(lim), require_all_move(all_move),
          cb(std::move(callback)) {
        for (Vertex v : t.tokens()) goal_mask[v] = 1;
        for (Vertex v : s.tokens())
            if (!goal_mask[v]) ++misplaced;
        unmoved_tokens = static_cast<int>(s.size());
    }

    void run() { dfs(); }

    void dfs() {
        if (stopped || ++nodes > node_cap) {
            stopped = true;
            return;
        }
        const std::size_t depth = cur.size();
        if (depth == limit) {
            if (misplaced == 0 && (!require_all_move || unmoved_tokens == 0))
                if (cb(cur)) stopped = true;
            return;
        }
        const std::size_t remaining = limit - depth;
        if (static_cast<std::size_t>(misplaced) > remaining) return;
        if (require_all_move && static_cast<std::size_t>(unmoved_tokens) > remaining) return;

        for (Vertex s = 0; s < g.vertex_count() && !stopped; ++s) {
            if (!occ[s] || moved[s]) continue;
            for (Vertex t : free_reachable(g, occ, s)) {
                if (stopped) break;
                if (moved[t]) continue;  // impossible: t free; defensive
                // a token that has taken its one move must rest on a goal vertex
                if (!goal_mask[t]) continue;
                auto path = find_free_path(g, occ, s, t);
                assert(path);
                Move mv;
                mv.from = s;
                mv.to = t;
                mv.path = std::move(*path);
                occ[s] = 0;
                occ[t] = 1;
                moved[t] = 1;
                if (!goal_mask[s]) --misplaced;
                --unmoved_tokens;
                cur.push_back(std::move(mv));
                dfs();
                cur.pop_back();
                ++unmoved_tokens;
                if (!goal_mask[s]) ++misplaced;
                moved[t] = 0;
                occ[t] = 0;
                occ[s] = 1;
            }
        }
    }
};

}  // namespace

void enumerate_balanced_partitions(const std::vector<Vertex>& s_only_in,
                                   const std::vector<Vertex>& t_only_in, int d,
                                   const std::function<bool(const BalancedPartition&)>& visit) {
    if (d <= 0) throw InputError("group count must be positive");
    auto s_only = sorted_unique(s_only_in);
    auto t_only = sorted_unique(t_only_in);
    if (s_only.size() != t_only.size())
        throw InputError("departure and arrival sets differ in size");
    const int m = static_cast<int>(s_only.size());
    if (d > m) return;

    std::vector<int> s_block(m), t_block(m), capacity(d, 0);
    bool done = false;

    // t-vertices fill the groups up to each group's departure count
    auto assign_sinks = [&](auto&& self, int i) -> void {
        if (done) return;
        if (i == m) {
            BalancedPartition part(d);
            for (int j = 0; j < m; ++j) part[s_block[j]].sources.push_back(s_only[j]);
            for (int j = 0; j < m; ++j) part[t_block[j]].sinks.push_back(t_only[j]);
            if (!visit(part)) done = true;
            return;
        }
        for (int b = 0; b < d && !done; ++b) {
            if (capacity[b] == 0) continue;
            --capacity[b];
            t_block[i] = b;
            self(self, i + 1);
            ++capacity[b];
        }
    };

    // restricted-growth assignment of departures into exactly d groups
    auto assign_sources = [&](auto&& self, int i, int used) -> void {
        if (done) return;
        if (d - used > m - i) return;  // not enough positions left to open all groups
        if (i == m) {
            if (used != d) return;
            for (int j = 0; j < m; ++j) ++capacity[s_block[j]];
            assign_sinks(assign_sinks, 0);
            std::fill(capacity.begin(), capacity.end(), 0);
            return;
        }
        for (int b = 0; b <= std::min(used, d - 1) && !done; ++b) {
            s_block[i] = b;
            self(self, i + 1, std::max(used, b + 1));
        }
    };
    assign_sources(assign_sources, 0, 0);
}

std::vector<BalancedPartition> balanced_partitions(const std::vector<Vertex>& s_only,
                                                   const std::vector<Vertex>& t_only, int d) {
    std::vector<BalancedPartition> out;
    enumerate_balanced_partitions(s_only, t_only, d, [&](const BalancedPartition& p) {
        out.push_back(p);
        return true;
    });
    return out;
}

std::optional<MoveSequence> schedule_tree_bounded(const Graph& tree, const Configuration& s,
                                                  const Configuration& t) {
    if (!is_forest(tree)) throw InputError("tree scheduler given a cyclic graph");
    if (s.size() != t.size()) throw InputError("token counts differ");

    std::vector<Vertex> sym_diff;
    {
        auto ss = s.sorted();
        auto tt = t.sorted();
        std::set_symmetric_difference(ss.begin(), ss.end(), tt.begin(), tt.end(),
                                      std::back_inserter(sym_diff));
    }
    auto tree_edges = tree.edges();
    std::sort(tree_edges.begin(), tree_edges.end());

    std::optional<MoveSequence> exact_cover, leaf_clean, any;
    std::size_t seen = 0;
    MoveOnceEnumerator en(tree, s, t, s.size(), true, [&](const std::vector<Move>& moves) {
        MoveSequence seq{moves};
        if (!any) any = seq;
        Graph induced = induced_move_graph(tree, seq);
        if (leaves_within(induced, sym_diff)) {
            if (!leaf_clean) leaf_clean = seq;
            auto used = induced.edges();
            std::sort(used.begin(), used.end());
            if (used == tree_edges) {
                exact_cover = std::move(seq);
                return true;
            }
        }
        return ++seen >= 20000;
    });
    en.run();
    if (exact_cover) return exact_cover;
    if (leaf_clean) return leaf_clean;
    return any;
}

MoveSequence schedule_directed_tree(const Graph& tree, const Configuration& s,
                                    const Configuration& t,
                                    const std::vector<std::pair<Vertex, Vertex>>& mapping) {
    if (!tree.directed()) throw InputError("directed tree scheduler needs a digraph");
    if (!is_forest(tree)) throw InputError("directed tree scheduler given a cyclic graph");
    const Vertex n = tree.vertex_count();

    std::vector<char> alive(n, 1), in_s(n, 0), in_t(n, 0);
    for (Vertex v : s.tokens()) in_s[v] = 1;
    for (Vertex v : t.tokens()) in_t[v] = 1;

    std::map<Vertex, Vertex> mu, mu_inv;
    for (auto [a, b] : mapping) {
        if (a < 0 || a >= n || b < 0 || b >= n || a == b)
            throw InputError("mapping pairs a token with itself or out of range");
        if (!in_s[a] || !in_t[b]) throw InputError("mapping endpoint not in its token set");
        if (!mu.emplace(a, b).second || !mu_inv.emplace(b, a).second)
            throw InputError("mapping is not a bijection");
    }
    if (mu.size() != s.size() || mu_inv.size() != t.size())
        throw InputError("mapping does not cover every token");

    std::vector<std::vector<Vertex>> und(n);
    for (auto [u, v] : tree.edges()) {
        und[u].push_back(v);
        und[v].push_back(u);
    }
    for (auto& a : und) std::sort(a.begin(), a.end());

    auto degree = [&](Vertex v) {
        int d = 0;
        for (Vertex w : und[v])
            if (alive[w]) ++d;
        return d;
    };
    // unique alive underlying path, validated to run along forward arcs
    auto directed_path = [&](Vertex a, Vertex b) -> std::optional<std::vector<Vertex>> {
        std::vector<Vertex> parent(n, -2);
        std::vector<Vertex> stack{a};
        parent[a] = -1;
        while (!stack.empty()) {
            Vertex u = stack.back();
            stack.pop_back();
            if (u == b) break;
            for (Vertex w : und[u])
                if (alive[w] && parent[w] == -2) {
                    parent[w] = u;
                    stack.push_back(w);
                }
        }
        if (parent[b] == -2) return std::nullopt;
        std::vector<Vertex> path;
        for (Vertex x = b; x != -1; x = parent[x]) path.push_back(x);
        std::reverse(path.begin(), path.end());
        for (std::size_t i = 0; i + 1 < path.size(); ++i)
            if (!tree.has_edge(path[i], path[i + 1])) return std::nullopt;
        return path;
    };

    for (const auto& [a, b] : mu)
        if (!directed_path(a, b))
            throw InputError("mapping lacks a forward path from " + std::to_string(a) + " to " +
                             std::to_string(b));

    auto drop_free_leaves = [&]() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (Vertex v = 0; v < n; ++v)
                if (alive[v] && !in_s[v] && !in_t[v] && degree(v) <= 1) {
                    alive[v] = 0;
                    changed = true;
                }
        }
    };
    drop_free_leaves();

    MoveSequence front, back;
    while (!mu.empty()) {
        Vertex leaf_arrival = -1, leaf_departure = -1;
        for (Vertex v = 0; v < n; ++v) {
            if (!alive[v] || degree(v) != 1) continue;
            if (in_t[v] && !in_s[v] && leaf_arrival < 0) leaf_arrival = v;
            if (in_s[v] && !in_t[v] && leaf_departure < 0) leaf_departure = v;
        }

        if (leaf_arrival >= 0) {
            const Vertex v = leaf_arrival;
            const Vertex u = mu_inv.at(v);
            auto path = directed_path(u, v);
            if (!path) throw std::logic_error("scheduler lost a mapped path");
            std::size_t wi = path->size();
            for (std::size_t i = path->size(); i-- > 0;)
                if (in_s[(*path)[i]]) {
                    wi = i;
                    break;
                }
            const Vertex w = (*path)[wi];
            Move mv;
            mv.from = w;
            mv.to = v;
            mv.path.assign(path->begin() + wi, path->end());
            front.moves.push_back(std::move(mv));

            if (w == u) {
                mu.erase(u);
                mu_inv.erase(v);
            } else {
                Vertex x = mu.at(w);
                mu.erase(w);
                mu_inv.erase(v);
                mu[u] = x;
                mu_inv[x] = u;
            }
            in_s[w] = 0;
            in_t[v] = 0;
            alive[v] = 0;
            drop_free_leaves();
            continue;
        }

        if (leaf_departure < 0) throw InputError("no schedulable leaf; mapping inconsistent");
        const Vertex u = leaf_departure;
        const Vertex v = mu.at(u);
        auto path = directed_path(u, v);
        if (!path) throw std::logic_error("scheduler lost a mapped path");
        std::size_t wi = 0;
        for (std::size_t i = 1; i < path->size(); ++i)
            if (in_t[(*path)[i]]) {
                wi = i;
                break;
            }
        if (wi == 0) throw std::logic_error("no arrival vertex along a mapped path");
        const Vertex w = (*path)[wi];
        Move mv;
        mv.from = u;
        mv.to = w;
        mv.path.assign(path->begin(), path->begin() + wi + 1);
        back.moves.push_back(std::move(mv));

        if (w == v) {
            mu.erase(u);
            mu_inv.erase(v);
        } else if (!in_s[w]) {
            Vertex y = mu_inv.at(w);
            mu.erase(u);
            mu_inv.erase(w);
            mu[y] = v;
            mu_inv[v] = y;
        } else {
            Vertex x = mu.at(w);
            Vertex y = mu_inv.at(w);
            mu.erase(u);
            mu[w] = v;
            mu_inv[v] = w;
            mu[y] = x;
            mu_inv[x] = y;
            mu_inv.erase(w);
        }
        in_s[u] = 0;
        in_t[w] = 0;
        alive[u] = 0;
        drop_free_leaves();
    }

    MoveSequence result = std::move(front);
    result.moves.insert(result.moves.end(), back.moves.rbegin(), back.moves.rend());
    return result;
}

SolveResult solve_by_k(const Instance& inst) {
    inst.validate();
    if (inst.labelled)
        throw UnsupportedVariantError("token-count search handles unlabelled variants");

    auto [kernel, map] = contract(inst);
    SolveResult res;
    res.method = "token-count";
    res.kernel = kernel;

    OracleResult bfs = shortest_move_once(kernel);
    if (!bfs.reachable || static_cast<long long>(*bfs.shortest) > kernel.budget) return res;
    res.yes = true;

    InstanceStats st = instance_stats(kernel);
    const std::size_t length = *bfs.shortest;

    std::optional<MoveSequence> clean, any;
    std::size_t seen = 0;
    MoveOnceEnumerator en(kernel.graph, kernel.source, kernel.target, length, false,
                          [&](const std::vector<Move>& moves) {
                              MoveSequence seq{moves};
                              if (!any) any = seq;
                              Graph induced = induced_move_graph(kernel.graph, seq);
                              if (is_forest(induced) && leaves_within(induced, st.sym_diff)) {
                                  clean = std::move(seq);
                                  return true;
                              }
                              return ++seen >= 20000;
                          });
    en.run();
    std::optional<MoveSequence> kseq = clean ? clean : any;
    if (kseq) {
        res.kernel_sequence = *kseq;
        res.sequence = lift_sequence(map, *kseq);
    }
    return res;
}

SolveResult solve_uutm(const Instance& inst) {
    inst.validate();
    if (inst.variant() != Variant::UUTM)
        throw UnsupportedVariantError("partition solver handles undirected unlabelled instances");

    auto [kernel, map] = contract(inst);
    SolveResult res;
    res.method = "partition";
    res.kernel = kernel;

    InstanceStats st = instance_stats(kernel);
    if (st.sym_diff.empty()) {
        res.yes = true;
        res.plan = PartitionPlan{};
        res.kernel_sequence = MoveSequence{};
        res.sequence = MoveSequence{};
        return res;
    }

    const long long budget = kernel.budget;
    std::map<std::vector<Vertex>, std::optional<SteinerTree>> tree_cache;
    auto group_tree = [&](const BalancedGroup& grp) -> const std::optional<SteinerTree>& {
        std::vector<Vertex> terminals = grp.sources;
        terminals.insert(terminals.end(), grp.sinks.begin(), grp.sinks.end());
        std::sort(terminals.begin(), terminals.end());
        auto it = tree_cache.find(terminals);
        if (it == tree_cache.end())
            it = tree_cache.emplace(terminals, min_steiner_tree(kernel.graph, terminals)).first;
        return it->second;
    };
    auto tree_bill = [&](const SteinerTree& tree) {
        long long bill = 0;
        for (Vertex v : tree.vertices) {
            bool dep = std::binary_search(st.s_only.begin(), st.s_only.end(), v);
            bool obs = std::binary_search(st.obstacles.begin(), st.obstacles.end(), v);
            if (dep || obs) ++bill;
        }
        return bill;
    };

    std::optional<PartitionPlan> accepted;
    const int d_max = static_cast<int>(std::min<long long>(budget, st.s_only.size()));
    for (int d = 1; d <= d_max && !accepted; ++d) {
        enumerate_balanced_partitions(st.s_only, st.t_only, d, [&](const BalancedPartition& part) {
            PartitionPlan plan;
            plan.groups = part;
            for (const BalancedGroup& grp : part) {
                const auto& tree = group_tree(grp);
                if (!tree) return true;  // group not connectable; next partition
                plan.trees.push_back(*tree);
                plan.total_moves += tree_bill(*tree);
                if (plan.total_moves > budget) return true;
            }
            accepted = std::move(plan);
            return false;
        });
    }
    if (!accepted) return res;

    res.yes = true;
    res.plan = accepted;

    std::set<Vertex> used;
    bool disjoint = true;
    for (const SteinerTree& tree : accepted->trees)
        for (Vertex v : tree.vertices)
            if (!used.insert(v).second) disjoint = false;

    if (disjoint) {
        MoveSequence kseq;
        bool ok = true;
        for (const SteinerTree& tree : accepted->trees) {
            Graph sub(kernel.graph.vertex_count(), false);
            for (auto [u, v] : tree.edges) sub.add_edge(u, v);
            std::vector<Vertex> s_here, t_here;
            for (Vertex v : tree.vertices) {
                if (kernel.source.contains(v)) s_here.push_back(v);
                if (kernel.target.contains(v)) t_here.push_back(v);
            }
            auto part = schedule_tree_bounded(sub, Configuration(s_here), Configuration(t_here));
            if (!part) {
                ok = false;
                break;
            }
            kseq.moves.insert(kseq.moves.end(), part->moves.begin(), part->moves.end());
        }
        if (ok && validate_sequence(kernel, kseq).ok()) {
            res.kernel_sequence = kseq;
            res.sequence = lift_sequence(map, kseq);
            return res;
        }
    }

    // overlapping trees or an unschedulable plan: fall back to the exact search
    SolveResult fallback = solve_by_k(kernel);
    if (fallback.yes && fallback.sequence) {
        res.kernel_sequence = fallback.sequence;
        res.sequence = lift_sequence(map, *fallback.sequence);
        res.method = "partition+token-count";
    }
    return res;
}

}  // namespace tokmove
