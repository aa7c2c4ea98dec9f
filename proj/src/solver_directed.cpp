#include "tokmove/solver_directed.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <thread>
#include <tuple>
#include <unordered_set>

#include "tokmove/contract.hpp"
#include "tokmove/errors.hpp"
#include "tokmove/moves.hpp"
#include "tokmove/oracle.hpp"
#include "tokmove/rng.hpp"
#include "tokmove/transforms.hpp"

namespace tokmove {

namespace {

constexpr long long kNegInf = std::numeric_limits<long long>::min() / 4;
constexpr int kWitnessSizeCap = 9;    // forest enumeration explodes beyond this
constexpr int kColorCap = 25;         // colour-coding dimension guard
constexpr std::uint64_t kTableBytesCap = 1'200'000'000ull;

struct Dsu {
    std::vector<int> p;
    explicit Dsu(int n) : p(n) {
        for (int i = 0; i < n; ++i) p[i] = i;
    }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    bool join(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        p[a] = b;
        return true;
    }
};

std::string component_code(Vertex root,
                           const std::vector<std::vector<std::pair<Vertex, bool>>>& adj,
                           const std::vector<int>& labels) {
    // rooted code: (label; sorted <dir><child-code>...)
    std::function<std::string(Vertex, Vertex)> rec = [&](Vertex v, Vertex par) {
        std::vector<std::string> kids;
        for (auto [w, fwd] : adj[v]) {
            if (w == par) continue;
            kids.push_back((fwd ? ">" : "<") + rec(w, v));
        }
        std::sort(kids.begin(), kids.end());
        std::string out = "(" + std::to_string(labels[v]) + ";";
        for (auto& k : kids) out += k;
        out += ")";
        return out;
    };
    return rec(root, -1);
}

std::string forest_code(int n, const std::vector<std::pair<Vertex, Vertex>>& arcs,
                        const std::vector<int>& labels) {
    std::vector<std::vector<std::pair<Vertex, bool>>> adj(n);
    for (auto [u, v] : arcs) {
        adj[u].push_back({v, true});
        adj[v].push_back({u, false});
    }
    std::vector<int> comp(n, -1);
    int comps = 0;
    for (Vertex v = 0; v < n; ++v) {
        if (comp[v] >= 0) continue;
        std::vector<Vertex> stack{v}, members;
        comp[v] = comps;
        while (!stack.empty()) {
            Vertex u = stack.back();
            stack.pop_back();
            members.push_back(u);
            for (auto [w, fwd] : adj[u])
                if (comp[w] < 0) {
                    comp[w] = comps;
                    stack.push_back(w);
                }
        }
        ++comps;
        (void)members;
    }
    std::vector<std::string> codes(comps);
    for (int c = 0; c < comps; ++c) codes[c] = std::string();
    for (Vertex v = 0; v < n; ++v) {
        std::string code = component_code(v, adj, labels);
        auto& slot = codes[comp[v]];
        if (slot.empty() || code < slot) slot = code;
    }
    std::sort(codes.begin(), codes.end());
    std::string out;
    for (auto& c : codes) {
        out += c;
        out += "|";
    }
    return out;
}

// rooted view of a directed forest: parents precede children in `order`
struct RootedPattern {
    int n = 0;
    std::vector<Vertex> roots, order;
    std::vector<std::vector<std::pair<Vertex, bool>>> kids;  // (child, arc points parent->child)
    int comps = 0;
};

RootedPattern root_pattern(int n, const std::vector<std::pair<Vertex, Vertex>>& arcs) {
    RootedPattern pat;
    pat.n = n;
    pat.kids.assign(n, {});
    std::vector<std::vector<std::pair<Vertex, bool>>> adj(n);
    std::set<std::pair<Vertex, Vertex>> seen;
    for (auto [u, v] : arcs) {
        if (u < 0 || u >= n || v < 0 || v >= n || u == v)
            throw InputError("pattern arc out of range");
        if (!seen.insert({u, v}).second) throw InputError("duplicate pattern arc");
        adj[u].push_back({v, true});
        adj[v].push_back({u, false});
    }
    std::vector<char> done(n, 0);
    for (Vertex r = 0; r < n; ++r) {
        if (done[r]) continue;
        pat.roots.push_back(r);
        ++pat.comps;
        std::vector<Vertex> stack{r};
        done[r] = 1;
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            pat.order.push_back(v);
            for (auto [w, fwd] : adj[v]) {
                if (done[w]) continue;
                done[w] = 1;
                pat.kids[v].push_back({w, fwd});
                stack.push_back(w);
            }
        }
    }
    if (static_cast<int>(arcs.size()) != n - pat.comps)
        throw InputError("pattern is not a forest");
    for (auto& k : pat.kids) std::sort(k.begin(), k.end());
    return pat;
}

std::pair<std::vector<Vertex>, std::vector<Vertex>> split_sym_diff(const Instance& inst) {
    InstanceStats st = instance_stats(inst);
    return {st.s_only, st.t_only};
}

// label -> instance vertex; index 0 unused
std::vector<Vertex> anchor_vertices(const Instance& inst, int delta) {
    auto [dep, arr] = split_sym_diff(inst);
    if (static_cast<int>(dep.size()) != delta)
        throw InputError("witness label count does not match the instance");
    std::vector<Vertex> anchor(2 * delta + 1, -1);
    for (int i = 0; i < delta; ++i) anchor[1 + i] = dep[i];
    for (int j = 0; j < delta; ++j) anchor[1 + delta + j] = arr[j];
    return anchor;
}

std::vector<Vertex> witness_pins(const LabelledForestWitness& w, const Instance& inst) {
    auto anchor = anchor_vertices(inst, w.delta);
    std::vector<Vertex> pins(w.size, -1);
    for (Vertex v = 0; v < w.size; ++v)
        if (w.labels[v] != 0) pins[v] = anchor[w.labels[v]];
    return pins;
}

/*
 * Exhaustive max-weight embedded copy, used on small hosts. Pattern vertices
 * are placed parents-first; a simple remaining-arcs bound prunes the search.
 */
struct ExhaustiveEmbed {
    const WeightedDigraph& host;
    const RootedPattern& pat;
    const std::vector<Vertex>& pins;
    std::vector<Vertex> map_, best_map;
    std::vector<char> used;
    long long best = kNegInf;
    long long max_arc = 1;
    std::vector<long long> tail_bound;  // arcs still unplaced after position i
    std::vector<Vertex> parent_of;
    std::vector<char> parent_dir;

    ExhaustiveEmbed(const WeightedDigraph& h, const RootedPattern& p, const std::vector<Vertex>& pn)
        : host(h), pat(p), pins(pn), map_(p.n, -1), used(h.graph.vertex_count(), 0),
          parent_of(p.n, -1), parent_dir(p.n, 0) {
        for (Vertex v = 0; v < p.n; ++v)
            for (auto [c, fwd] : p.kids[v]) {
                parent_of[c] = v;
                parent_dir[c] = fwd;
            }
        for (auto& row : host.arc_weight)
            for (long long w : row) max_arc = std::max(max_arc, w);
        tail_bound.assign(p.n + 1, 0);
        for (int i = p.n - 1; i >= 0; --i) {
            Vertex x = pat.order[i];
            tail_bound[i] = tail_bound[i + 1] + (parent_of[x] >= 0 ? max_arc : 0);
        }
    }

    void place(std::size_t i, long long cur) {
        if (cur + tail_bound[i] <= best) return;
        if (i == pat.order.size()) {
            best = cur;
            best_map = map_;
            return;
        }
        Vertex x = pat.order[i];
        Vertex par = parent_of[x];
        auto try_vertex = [&](Vertex v, long long gain) {
            if (used[v]) return;
            used[v] = 1;
            map_[x] = v;
            place(i + 1, cur + gain);
            map_[x] = -1;
            used[v] = 0;
        };
        if (par < 0) {
            if (pins[x] >= 0)
                try_vertex(pins[x], 0);
            else
                for (Vertex v = 0; v < host.graph.vertex_count(); ++v) try_vertex(v, 0);
        } else {
            Vertex pv = map_[par];
            const auto& nb = parent_dir[x] ? host.graph.out(pv) : host.graph.in(pv);
            for (Vertex v : nb) {
                if (pins[x] >= 0 && v != pins[x]) continue;
                long long w = parent_dir[x] ? host.weight(pv, v) : host.weight(v, pv);
                try_vertex(v, w);
            }
        }
    }
};

/*
 * Colour-coded search for a heavy embedded copy. Unpinned pattern vertices
 * draw from a palette of C colours; each trial colours the host and runs a
 * subtree DP in which masks track the palette. Success probability per trial
 * is at least C!/C^C, so ceil(e^C ln(1/eps)) trials bound the miss rate by eps.
 */
struct ColorTrial {
    const WeightedDigraph& host;
    const RootedPattern& pat;
    const std::vector<Vertex>& pins;
    int C, M, nh;
    std::vector<int> color;
    std::vector<char> pin_host;
    bool store;

    std::vector<std::vector<std::vector<long long>>> stages;  // per vertex, per merge step
    std::vector<std::vector<long long>> comp_tbl;
    std::vector<std::vector<Vertex>> comp_root;
    std::vector<std::vector<long long>> g;
    long long result = kNegInf;

    ColorTrial(const WeightedDigraph& h, const RootedPattern& p, const std::vector<Vertex>& pn,
               int colors, std::uint64_t trial_seed, bool keep)
        : host(h), pat(p), pins(pn), C(colors), M(1 << colors), nh(h.graph.vertex_count()),
          color(nh, 0), pin_host(nh, 0), store(keep) {
        SplitMix64 rng(trial_seed);
        if (C > 0)
            for (Vertex v = 0; v < nh; ++v) color[v] = static_cast<int>(rng.below(C));
        for (Vertex x : pins)
            if (x >= 0) pin_host[x] = 1;
        stages.resize(pat.n);
    }

    std::vector<long long> base(Vertex x) const {
        std::vector<long long> row(static_cast<std::size_t>(nh) * M, kNegInf);
        if (pins[x] >= 0) {
            row[static_cast<std::size_t>(pins[x]) * M] = 0;
        } else {
            for (Vertex v = 0; v < nh; ++v)
                if (!pin_host[v]) row[static_cast<std::size_t>(v) * M + (1 << color[v])] = 0;
        }
        return row;
    }

    void run() {
        std::vector<std::vector<long long>> up(pat.n);
        for (auto it = pat.order.rbegin(); it != pat.order.rend(); ++it) {
            Vertex x = *it;
            std::vector<long long> cur = base(x);
            if (store) stages[x].push_back(cur);
            for (auto [c, fwd] : pat.kids[x]) {
                std::vector<long long> childbest(static_cast<std::size_t>(nh) * M, kNegInf);
                for (Vertex v = 0; v < nh; ++v) {
                    const auto& nb = fwd ? host.graph.out(v) : host.graph.in(v);
                    for (Vertex w : nb) {
                        long long wt = fwd ? host.weight(v, w) : host.weight(w, v);
                        const long long* crow = up[c].data() + static_cast<std::size_t>(w) * M;
                        long long* brow = childbest.data() + static_cast<std::size_t>(v) * M;
                        for (int B = 0; B < M; ++B)
                            if (crow[B] > kNegInf && crow[B] + wt > brow[B]) brow[B] = crow[B] + wt;
                    }
                }
                std::vector<long long> next(static_cast<std::size_t>(nh) * M, kNegInf);
                for (Vertex v = 0; v < nh; ++v) {
                    const long long* arow = cur.data() + static_cast<std::size_t>(v) * M;
                    const long long* brow = childbest.data() + static_cast<std::size_t>(v) * M;
                    long long* nrow = next.data() + static_cast<std::size_t>(v) * M;
                    for (int mask = 0; mask < M; ++mask) {
                        long long bestv = kNegInf;
                        for (int A = mask;; A = (A - 1) & mask) {
                            if (arow[A] > kNegInf && brow[mask ^ A] > kNegInf)
                                bestv = std::max(bestv, arow[A] + brow[mask ^ A]);
                            if (A == 0) break;
                        }
                        nrow[mask] = bestv;
                    }
                }
                cur = std::move(next);
                if (store) stages[x].push_back(cur);
            }
            up[x] = std::move(cur);
            if (!store)
                for (auto [c, fwd] : pat.kids[x]) {
                    std::vector<long long>().swap(up[c]);
                    (void)fwd;
                }
        }

        comp_tbl.assign(pat.comps, std::vector<long long>(M, kNegInf));
        if (store) comp_root.assign(pat.comps, std::vector<Vertex>(M, -1));
        for (int i = 0; i < pat.comps; ++i) {
            Vertex r = pat.roots[i];
            for (Vertex v = 0; v < nh; ++v)
                for (int B = 0; B < M; ++B) {
                    long long val = up[r][static_cast<std::size_t>(v) * M + B];
                    if (val > comp_tbl[i][B]) {
                        comp_tbl[i][B] = val;
                        if (store) comp_root[i][B] = v;
                    }
                }
        }
        g.assign(pat.comps + 1, std::vector<long long>(M, kNegInf));
        g[0][0] = 0;
        for (int i = 1; i <= pat.comps; ++i)
            for (int mask = 0; mask < M; ++mask) {
                long long bestv = kNegInf;
                for (int B = mask;; B = (B - 1) & mask) {
                    if (g[i - 1][mask ^ B] > kNegInf && comp_tbl[i - 1][B] > kNegInf)
                        bestv = std::max(bestv, g[i - 1][mask ^ B] + comp_tbl[i - 1][B]);
                    if (B == 0) break;
                }
                g[i][mask] = bestv;
            }
        result = g[pat.comps][M - 1];
        if (store) up_final = std::move(up);
    }

    std::vector<std::vector<long long>> up_final;

    void descend(Vertex x, Vertex v, int mask, std::vector<Vertex>& emb) const {
        emb[x] = v;
        for (std::size_t s = pat.kids[x].size(); s-- > 0;) {
            auto [c, fwd] = pat.kids[x][s];
            long long want = stages[x][s + 1][static_cast<std::size_t>(v) * M + mask];
            bool found = false;
            for (int A = mask; !found; A = (A - 1) & mask) {
                int B = mask ^ A;
                long long basev = stages[x][s][static_cast<std::size_t>(v) * M + A];
                if (basev > kNegInf) {
                    const auto& nb = fwd ? host.graph.out(v) : host.graph.in(v);
                    for (Vertex w : nb) {
                        long long wt = fwd ? host.weight(v, w) : host.weight(w, v);
                        long long cv = up_final[c][static_cast<std::size_t>(w) * M + B];
                        if (cv > kNegInf && basev + cv + wt == want) {
                            descend(c, w, B, emb);
                            mask = A;
                            found = true;
                            break;
                        }
                    }
                }
                if (A == 0) break;
            }
            if (!found) throw std::logic_error("embedding reconstruction failed");
        }
    }

    std::vector<Vertex> reconstruct() const {
        std::vector<Vertex> emb(pat.n, -1);
        int mask = M - 1;
        for (int i = pat.comps; i >= 1; --i) {
            bool found = false;
            for (int B = mask; !found; B = (B - 1) & mask) {
                if (g[i - 1][mask ^ B] > kNegInf && comp_tbl[i - 1][B] > kNegInf &&
                    g[i - 1][mask ^ B] + comp_tbl[i - 1][B] == g[i][mask]) {
                    descend(pat.roots[i - 1], comp_root[i - 1][B], B, emb);
                    mask ^= B;
                    found = true;
                }
                if (B == 0) break;
            }
            if (!found) throw std::logic_error("embedding reconstruction failed");
        }
        return emb;
    }
};

std::uint64_t default_trials(int colors, double failure_bound) {
    if (colors <= 0) return 1;
    long double eps = std::min(std::max(failure_bound, 1e-12), 0.5);
    long double t = std::ceil(std::exp(static_cast<long double>(colors)) * std::log(1.0L / eps));
    if (t < 1) t = 1;
    if (t > 4e18L) t = 4e18L;
    return static_cast<std::uint64_t>(t);
}

std::optional<EmbeddingResult> color_coding_embed(const WeightedDigraph& host,
                                                  const RootedPattern& pat,
                                                  const std::vector<Vertex>& pins,
                                                  const DirectedSolveOptions& opts,
                                                  std::optional<long long> target) {
    int C = 0;
    for (Vertex p : pins)
        if (p < 0) ++C;
    if (C > kColorCap)
        throw CapExceededError("colour-coding dimension " + std::to_string(C) + " exceeds cap " +
                               std::to_string(kColorCap));
    std::uint64_t table_bytes = 0;
    for (Vertex x = 0; x < pat.n; ++x)
        table_bytes += (pat.kids[x].size() + 2) *
                       (static_cast<std::uint64_t>(host.graph.vertex_count()) << C) * 8;
    if (table_bytes > kTableBytesCap)
        throw CapExceededError("colour-coding tables would need " + std::to_string(table_bytes) +
                               " bytes");

    std::uint64_t trials =
        C == 0 ? 1 : (opts.trial_override ? *opts.trial_override
                                          : default_trials(C, opts.failure_bound));
    const int threads = std::max(1, opts.threads);

    long long best = kNegInf;
    std::uint64_t best_trial = 0;
    bool have = false;

    auto run_one = [&](std::uint64_t t) {
        ColorTrial trial(host, pat, pins, C, opts.seed + t, false);
        trial.run();
        return trial.result;
    };

    for (std::uint64_t start = 0; start < trials;) {
        std::uint64_t cnt = std::min<std::uint64_t>(threads, trials - start);
        std::vector<long long> res(cnt, kNegInf);
        if (cnt == 1) {
            res[0] = run_one(start);
        } else {
            std::vector<std::thread> pool;
            for (std::uint64_t i = 0; i < cnt; ++i)
                pool.emplace_back([&, i] { res[i] = run_one(start + i); });
            for (auto& th : pool) th.join();
        }
        bool stop = false;
        for (std::uint64_t i = 0; i < cnt; ++i) {
            if (res[i] > kNegInf && (!have || res[i] > best)) {
                best = res[i];
                best_trial = start + i;
                have = true;
            }
            if (target && res[i] >= *target) {
                best = res[i];
                best_trial = start + i;
                have = true;
                stop = true;
                break;
            }
        }
        if (stop) break;
        start += cnt;
    }
    if (!have) return std::nullopt;
    if (target && best < *target) {
        // no trial reached the requested weight; still report the heaviest copy
    }
    ColorTrial chosen(host, pat, pins, C, opts.seed + best_trial, true);
    chosen.run();
    EmbeddingResult out;
    out.weight = chosen.result;
    out.map = chosen.reconstruct();
    return out;
}

bool leaves_all_labelled(const LabelledForestWitness& w) {
    std::vector<int> deg(w.size, 0);
    for (auto [u, v] : w.arcs) {
        ++deg[u];
        ++deg[v];
    }
    for (Vertex v = 0; v < w.size; ++v)
        if (deg[v] <= 1 && w.labels[v] == 0) return false;
    return true;
}

Instance witness_instance(const LabelledForestWitness& w, long long budget) {
    std::vector<Vertex> s_conf, t_conf;
    for (Vertex v = 0; v < w.size; ++v) {
        if (w.labels[v] == 0) {
            s_conf.push_back(v);
            t_conf.push_back(v);
        } else if (w.labels[v] <= w.delta) {
            s_conf.push_back(v);
        } else {
            t_conf.push_back(v);
        }
    }
    return Instance{w.graph(), false, Configuration(s_conf), Configuration(t_conf), budget};
}

// decision cache for the self-check on witness graphs; keyed by shape and budget
bool witness_internal_yes(const LabelledForestWitness& w, long long budget, std::uint64_t cap) {
    static std::map<std::pair<std::string, long long>, bool> cache;
    static std::mutex mu;
    const std::string code = w.canonical_code();
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find({code, budget});
        if (it != cache.end()) return it->second;
    }
    Instance hi = witness_instance(w, budget);
    OracleResult r = shortest_transforming_sequence(hi, {cap, false});
    bool yes = r.reachable && static_cast<long long>(*r.shortest) <= budget;
    std::lock_guard<std::mutex> lk(mu);
    cache.emplace(std::make_pair(code, budget), yes);
    return yes;
}

std::optional<std::vector<Vertex>> embed_witness(const LabelledForestWitness& w,
                                                 const Instance& inst,
                                                 const DirectedSolveOptions& opts) {
    if (inst.graph.vertex_count() <= opts.exact_threshold) return exact_label_embedding(w, inst);
    if (opts.engine == DirectedSolveOptions::Engine::Direct || !leaves_all_labelled(w)) {
        // label-aware palette over pool vertices only
        RootedPattern pat = root_pattern(w.size, w.arcs);
        std::vector<Vertex> pins = witness_pins(w, inst);
        WeightedDigraph host = WeightedDigraph::uniform(inst.graph, 1);
        auto r = color_coding_embed(host, pat, pins, opts,
                                    static_cast<long long>(w.arcs.size()));
        if (!r || r->weight < static_cast<long long>(w.arcs.size())) return std::nullopt;
        return r->map;
    }
    WeightedGadgetPair pair = build_weight_gadget(inst, w);
    auto r = max_weight_forest_embedding(pair, opts, pair.full_weight);
    if (!r || r->weight < pair.full_weight) return std::nullopt;
    std::vector<Vertex> emb(r->map.begin(), r->map.begin() + w.size);
    // alignment is forced by the weights; verify rather than assume
    auto anchor = anchor_vertices(inst, w.delta);
    for (Vertex v = 0; v < w.size; ++v) {
        if (emb[v] < 0 || emb[v] >= inst.graph.vertex_count()) return std::nullopt;
        if (w.labels[v] != 0 && emb[v] != anchor[w.labels[v]]) return std::nullopt;
    }
    for (auto [u, v] : w.arcs)
        if (!inst.graph.has_edge(emb[u], emb[v])) return std::nullopt;
    return emb;
}

MoveSequence map_moves(const MoveSequence& seq, const std::vector<Vertex>& to) {
    MoveSequence out;
    out.moves.reserve(seq.moves.size());
    for (const Move& m : seq.moves) {
        Move nm;
        nm.from = to[m.from];
        nm.to = to[m.to];
        nm.label = m.label;
        nm.path.reserve(m.path.size());
        for (Vertex v : m.path) nm.path.push_back(to[v]);
        out.moves.push_back(std::move(nm));
    }
    return out;
}

}  // namespace

Graph LabelledForestWitness::graph() const {
    Graph g(size, true);
    for (auto [u, v] : arcs) g.add_edge(u, v);
    return g;
}

void LabelledForestWitness::validate() const {
    if (size < 0 || delta < 0) throw InputError("negative witness dimensions");
    if (static_cast<int>(labels.size()) != size) throw InputError("label array size mismatch");
    std::vector<int> count(2 * delta + 1, 0);
    for (int lab : labels) {
        if (lab < 0 || lab > 2 * delta) throw InputError("label out of range");
        if (lab > 0 && ++count[lab] > 1) throw InputError("label used twice");
    }
    Graph g = graph();
    if (!is_forest(g)) throw InputError("witness is not a forest");
}

std::string LabelledForestWitness::canonical_code() const {
    return std::to_string(size) + "/" + std::to_string(delta) + ":" +
           forest_code(size, arcs, labels);
}

std::vector<LabelledForestWitness> enumerate_labelled_forests(int size, int delta,
                                                              bool require_all_labels) {
    if (delta < 0) throw InputError("negative label count");
    if (size <= 0) return {};
    if (require_all_labels && 2 * delta > size) return {};

    static std::map<std::tuple<int, int, bool>, std::vector<LabelledForestWitness>> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find({size, delta, require_all_labels});
        if (it != cache.end()) return it->second;
    }

    std::vector<std::pair<Vertex, Vertex>> slots;
    for (Vertex i = 0; i < size; ++i)
        for (Vertex j = i + 1; j < size; ++j) slots.push_back({i, j});

    // stage one: undirected forests, then arc orientations, deduplicated shapes
    std::vector<std::vector<std::pair<Vertex, Vertex>>> shapes;
    std::unordered_set<std::string> shape_seen;
    std::vector<int> zero_labels(size, 0);
    std::vector<std::pair<Vertex, Vertex>> chosen;

    auto orient = [&](const std::vector<std::pair<Vertex, Vertex>>& edges) {
        const int m = static_cast<int>(edges.size());
        for (int bits = 0; bits < (1 << m); ++bits) {
            std::vector<std::pair<Vertex, Vertex>> arcs;
            arcs.reserve(m);
            for (int e = 0; e < m; ++e) {
                auto [u, v] = edges[e];
                if (bits >> e & 1)
                    arcs.push_back({v, u});
                else
                    arcs.push_back({u, v});
            }
            std::string code = forest_code(size, arcs, zero_labels);
            if (shape_seen.insert(code).second) shapes.push_back(std::move(arcs));
        }
    };

    std::function<void(std::size_t, Dsu&)> grow = [&](std::size_t i, Dsu& dsu) {
        if (i == slots.size()) {
            orient(chosen);
            return;
        }
        grow(i + 1, dsu);
        auto [u, v] = slots[i];
        if (dsu.find(u) != dsu.find(v)) {
            Dsu saved = dsu;
            dsu.join(u, v);
            chosen.push_back(slots[i]);
            grow(i + 1, dsu);
            chosen.pop_back();
            dsu = saved;
        }
    };
    Dsu dsu(size);
    grow(0, dsu);

    // stage two: label placements over each shape
    std::vector<LabelledForestWitness> out;
    std::unordered_set<std::string> seen;
    const int nlabels = 2 * delta;
    for (const auto& arcs : shapes) {
        std::vector<int> labels(size, 0);
        std::vector<char> used(size, 0);
        std::function<void(int)> assign = [&](int lab) {
            if (lab > nlabels) {
                LabelledForestWitness w;
                w.size = size;
                w.delta = delta;
                w.arcs = arcs;
                w.labels = labels;
                if (seen.insert(w.canonical_code()).second) out.push_back(std::move(w));
                return;
            }
            if (!require_all_labels) assign(lab + 1);
            for (Vertex v = 0; v < size; ++v) {
                if (used[v]) continue;
                used[v] = 1;
                labels[v] = lab;
                assign(lab + 1);
                labels[v] = 0;
                used[v] = 0;
            }
        };
        assign(1);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.canonical_code() < b.canonical_code();
    });

    std::lock_guard<std::mutex> lk(mu);
    return cache.emplace(std::make_tuple(size, delta, require_all_labels), std::move(out))
        .first->second;
}

long long WeightedDigraph::weight(Vertex u, Vertex v) const {
    const auto& nb = graph.out(u);
    auto it = std::lower_bound(nb.begin(), nb.end(), v);
    if (it == nb.end() || *it != v) throw InputError("weight lookup on a missing arc");
    return arc_weight[u][it - nb.begin()];
}

void WeightedDigraph::set_weight(Vertex u, Vertex v, long long w) {
    const auto& nb = graph.out(u);
    auto it = std::lower_bound(nb.begin(), nb.end(), v);
    if (it == nb.end() || *it != v) throw InputError("weight update on a missing arc");
    arc_weight[u][it - nb.begin()] = w;
}

WeightedDigraph WeightedDigraph::uniform(const Graph& g, long long w) {
    WeightedDigraph wd;
    wd.graph = g;
    wd.arc_weight.resize(g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        wd.arc_weight[v].assign(g.out(v).size(), w);
    return wd;
}

WeightedGadgetPair build_weight_gadget(const Instance& inst, const LabelledForestWitness& w) {
    w.validate();
    if (!inst.graph.directed()) throw UnsupportedVariantError("gadget host must be directed");
    const int q = w.size;
    auto anchor = anchor_vertices(inst, w.delta);

    auto pendants_for = [&](int lab) -> std::pair<int, long long> {
        if (lab == 0) return {0, 0};
        // departure slot i keeps its index; arrival slot j sits at delta + j
        return {lab, static_cast<long long>(lab) * q};
    };

    WeightedGadgetPair pair;
    pair.q = q;
    pair.host_anchor = anchor;

    // pattern: witness plus pendants appended after the original vertices
    {
        Vertex next = q;
        std::vector<std::tuple<Vertex, Vertex, long long>> arcs;
        for (auto [u, v] : w.arcs) arcs.push_back({u, v, 1});
        for (Vertex v = 0; v < q; ++v) {
            auto [cnt, wt] = pendants_for(w.labels[v]);
            for (int i = 0; i < cnt; ++i) {
                if (w.labels[v] <= w.delta)
                    arcs.push_back({next++, v, wt});
                else
                    arcs.push_back({v, next++, wt});
            }
        }
        Graph g(next, true);
        for (auto [u, v, wt] : arcs) g.add_edge(u, v);
        pair.pattern = WeightedDigraph::uniform(g, 1);
        for (auto [u, v, wt] : arcs) pair.pattern.set_weight(u, v, wt);
    }

    // host: instance digraph plus the same pendants on the anchor vertices
    {
        Vertex next = inst.graph.vertex_count();
        std::vector<std::tuple<Vertex, Vertex, long long>> arcs;
        for (auto [u, v] : inst.graph.edges()) arcs.push_back({u, v, 1});
        long long full = static_cast<long long>(w.arcs.size());
        for (int lab = 1; lab <= 2 * w.delta; ++lab) {
            auto [cnt, wt] = pendants_for(lab);
            for (int i = 0; i < cnt; ++i) {
                if (lab <= w.delta)
                    arcs.push_back({next++, anchor[lab], wt});
                else
                    arcs.push_back({anchor[lab], next++, wt});
                full += wt;
            }
        }
        Graph g(next, true);
        for (auto [u, v, wt] : arcs) g.add_edge(u, v);
        pair.host = WeightedDigraph::uniform(g, 1);
        for (auto [u, v, wt] : arcs) pair.host.set_weight(u, v, wt);
        pair.full_weight = full;
    }
    return pair;
}

std::optional<EmbeddingResult> max_weight_forest_embedding(const WeightedGadgetPair& pair,
                                                           const DirectedSolveOptions& opts,
                                                           std::optional<long long> target) {
    std::vector<std::pair<Vertex, Vertex>> arcs = pair.pattern.graph.edges();
    RootedPattern pat = root_pattern(pair.pattern.graph.vertex_count(), arcs);
    std::vector<Vertex> pins(pat.n, -1);
    if (pat.n > pair.host.graph.vertex_count()) return std::nullopt;

    if (pair.host.graph.vertex_count() <= opts.exact_threshold) {
        ExhaustiveEmbed ex(pair.host, pat, pins);
        ex.place(0, 0);
        if (ex.best <= kNegInf) return std::nullopt;
        EmbeddingResult out;
        out.weight = ex.best;
        out.map = ex.best_map;
        return out;
    }
    return color_coding_embed(pair.host, pat, pins, opts, target);
}

std::optional<std::vector<Vertex>> exact_label_embedding(const LabelledForestWitness& w,
                                                         const Instance& inst) {
    w.validate();
    if (!inst.graph.directed()) throw UnsupportedVariantError("embedding host must be directed");
    if (w.size > inst.graph.vertex_count()) return std::nullopt;
    RootedPattern pat = root_pattern(w.size, w.arcs);
    std::vector<Vertex> pins = witness_pins(w, inst);
    WeightedDigraph host = WeightedDigraph::uniform(inst.graph, 1);
    ExhaustiveEmbed ex(host, pat, pins);
    ex.place(0, 0);
    if (ex.best <= kNegInf) return std::nullopt;
    return ex.best_map;
}

bool is_witness(const LabelledForestWitness& w, const Instance& inst,
                const DirectedSolveOptions& opts) {
    w.validate();
    inst.validate();
    if (inst.variant() != Variant::UDTM)
        throw UnsupportedVariantError("witness checks run on directed unlabelled instances");
    if (static_cast<long long>(w.size) > 2 * inst.budget)
        throw InputError("witness larger than twice the budget");
    if (!witness_internal_yes(w, inst.budget, opts.oracle_cap)) return false;
    return embed_witness(w, inst, opts).has_value();
}

SolveResult solve_udtm(const Instance& inst, const DirectedSolveOptions& opts) {
    inst.validate();
    if (inst.variant() != Variant::UDTM)
        throw UnsupportedVariantError("forest solver handles directed unlabelled instances");

    auto [kernel0, cmap] = contract(inst);
    TransformResult pruned = prune_obstacles(kernel0);
    const Instance& host = pruned.instance;

    SolveResult res;
    res.method = "forest";
    res.kernel = host;

    InstanceStats st = instance_stats(host);
    const int delta = static_cast<int>(st.s_only.size());
    if (delta == 0) {
        res.yes = true;
        res.kernel_sequence = MoveSequence{};
        res.sequence = MoveSequence{};
        return res;
    }

    const long long q_hi = std::min<long long>(
        {static_cast<long long>(st.sym_diff.size()) + host.budget - delta,
         static_cast<long long>(host.graph.vertex_count())});
    for (long long q = static_cast<long long>(st.sym_diff.size()); q <= q_hi; ++q) {
        if (q > kWitnessSizeCap)
            throw CapExceededError("witness sweep needs forests on " + std::to_string(q) +
                                   " vertices, cap is " + std::to_string(kWitnessSizeCap));
        for (const LabelledForestWitness& w :
             enumerate_labelled_forests(static_cast<int>(q), delta, true)) {
            if (!leaves_all_labelled(w)) continue;
            if (!witness_internal_yes(w, host.budget, opts.oracle_cap)) continue;
            auto emb = embed_witness(w, host, opts);
            if (!emb) continue;

            OracleResult orr =
                shortest_transforming_sequence(witness_instance(w, host.budget),
                                               {opts.oracle_cap, true});
            if (!orr.witness) continue;
            MoveSequence on_host = map_moves(*orr.witness, *emb);
            if (!validate_sequence(host, on_host).ok()) continue;

            res.yes = true;
            res.kernel_sequence = on_host;
            MoveSequence on_kernel = map_moves(on_host, pruned.new_to_old);
            res.sequence = lift_sequence(cmap, on_kernel);
            return res;
        }
    }
    return res;
}

}  // namespace tokmove
