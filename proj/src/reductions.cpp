#include "tokmove/reductions.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <string>
#include <tuple>

#include "tokmove/errors.hpp"

namespace tokmove {

namespace {

constexpr long long kSat = (1ll << 62);

long long sat_mul(long long a, long long b) {
    if (a <= 0 || b <= 0) return 0;
    if (a > kSat / b) return kSat;
    return a * b;
}

long long sat_add(long long a, long long b) {
    if (a >= kSat || b >= kSat || a > kSat - b) return kSat;
    return a + b;
}

}  // namespace

void RBDSInstance::validate() const {
    if (blue_count < 0 || red_count < 0 || k < 0) throw InputError("negative sizes");
    for (auto [b, r] : edges)
        if (b < 0 || b >= blue_count || r < 0 || r >= red_count)
            throw InputError("domination edge endpoint out of range");
}

Instance reduce_rbds(const RBDSInstance& rbds, Variant variant) {
    rbds.validate();
    const int nr = rbds.red_count, nb = rbds.blue_count;
    const bool labelled = variant_labelled(variant);
    const bool directed = variant_directed(variant);

    const Vertex blue0 = nr;
    const Vertex red0 = nr + nb;
    const Vertex hold0 = red0 + nr;  // labelled variants only
    const Vertex n = labelled ? hold0 + nb : hold0;

    Graph g(n, directed);
    for (Vertex t = 0; t + 1 < nr; ++t) g.add_edge(t, t + 1);
    if (nr > 0)
        for (int b = 0; b < nb; ++b) g.add_edge(nr - 1, blue0 + b);
    for (auto [b, r] : rbds.edges) g.add_edge(blue0 + b, red0 + r);
    if (labelled)
        for (int b = 0; b < nb; ++b) {
            g.add_edge(blue0 + b, hold0 + b);
            if (directed) g.add_edge(hold0 + b, blue0 + b);
        }

    std::vector<Vertex> s_conf, t_conf;
    for (Vertex t = 0; t < nr; ++t) s_conf.push_back(t);
    for (int b = 0; b < nb; ++b) s_conf.push_back(blue0 + b);
    for (int r = 0; r < nr; ++r) t_conf.push_back(red0 + r);
    for (int b = 0; b < nb; ++b) t_conf.push_back(blue0 + b);

    long long budget = static_cast<long long>(nr) + (labelled ? 2ll : 1ll) * rbds.k;
    Instance inst{std::move(g), labelled, Configuration(s_conf), Configuration(t_conf), budget};
    inst.validate();
    return inst;
}

void MSIInstance::validate() const {
    if (colors <= 0) throw InputError("colour count must be positive");
    if (host.directed() || shape.directed()) throw InputError("inputs must be undirected");
    if (static_cast<int>(color.size()) != host.vertex_count())
        throw InputError("one colour per searched-graph vertex required");
    for (int c : color)
        if (c < 0 || c >= colors) throw InputError("vertex colour out of range");
    if (shape.vertex_count() != colors) throw InputError("shape must live on the colour set");
    if (root < 0 || root >= colors) throw InputError("root out of range");
}

LevelDag build_level_dag(const Graph& shape, Vertex root) {
    if (shape.directed()) throw InputError("levelling expects an undirected graph");
    const Vertex n = shape.vertex_count();
    if (root < 0 || root >= n) throw InputError("root out of range");
    LevelDag out;
    out.level.assign(n, -1);
    std::deque<Vertex> queue{root};
    out.level[root] = 0;
    while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop_front();
        for (Vertex w : shape.out(v))
            if (out.level[w] < 0) {
                out.level[w] = out.level[v] + 1;
                queue.push_back(w);
            }
    }
    for (Vertex v = 0; v < n; ++v)
        if (out.level[v] < 0) throw InputError("shape is disconnected");
    out.dag = Graph(n, true);
    for (auto [u, v] : shape.edges()) {
        if (out.level[u] == out.level[v])
            throw InputError("shape has an edge within one level; it cannot be bipartite");
        if (out.level[u] < out.level[v])
            out.dag.add_edge(u, v);
        else
            out.dag.add_edge(v, u);
    }
    return out;
}

namespace {

std::vector<std::vector<Vertex>> color_classes(const MSIInstance& msi) {
    std::vector<std::vector<Vertex>> cls(msi.colors);
    for (Vertex v = 0; v < msi.host.vertex_count(); ++v) cls[msi.color[v]].push_back(v);
    return cls;
}

// host edges between paired colour classes, oriented along the level dag
struct RetainedEdges {
    std::vector<std::pair<Vertex, Vertex>> list;  // canonical (min,max) host pairs
    std::vector<std::pair<Vertex, Vertex>> oriented;  // tail, head per entry
};

RetainedEdges retained_edges(const MSIInstance& msi, const LevelDag& ld) {
    RetainedEdges out;
    for (auto [u, v] : msi.host.edges()) {
        int cu = msi.color[u], cv = msi.color[v];
        if (cu == cv) continue;
        if (!msi.shape.has_edge(cu, cv)) continue;
        out.list.push_back({u, v});
        if (ld.dag.has_edge(cu, cv))
            out.oriented.push_back({u, v});
        else
            out.oriented.push_back({v, u});
    }
    return out;
}

void check_planted(const MSIInstance& msi, const std::vector<Vertex>& planted) {
    if (static_cast<int>(planted.size()) != msi.colors)
        throw ConstructionError("planted copy needs one vertex per colour");
    for (int c = 0; c < msi.colors; ++c) {
        Vertex v = planted[c];
        if (v < 0 || v >= msi.host.vertex_count() || msi.color[v] != c)
            throw ConstructionError("planted vertex " + std::to_string(v) +
                                    " does not carry colour " + std::to_string(c));
    }
    for (auto [i, j] : msi.shape.edges())
        if (!msi.host.has_edge(planted[i], planted[j]))
            throw ConstructionError("planted copy is missing the edge for colours " +
                                    std::to_string(i) + "," + std::to_string(j));
}

}  // namespace

Instance reduce_msi_directed(const MSIInstance& msi) {
    msi.validate();
    LevelDag ld = build_level_dag(msi.shape, msi.root);
    auto cls = color_classes(msi);
    auto arcs = ld.dag.edges();
    const int nm = msi.host.vertex_count();
    const int na = static_cast<int>(arcs.size());
    const int k = msi.colors;

    const Vertex src0 = nm;
    const Vertex tgt0 = nm + na;
    const Vertex sto0 = nm + 2 * na;
    Graph g(sto0 + k, true);

    RetainedEdges re = retained_edges(msi, ld);
    for (auto [u, v] : re.oriented) g.add_edge(u, v);
    for (int a = 0; a < na; ++a) {
        auto [i, j] = arcs[a];
        for (Vertex u : cls[i]) g.add_edge(src0 + a, u);
        for (Vertex u : cls[j]) g.add_edge(u, tgt0 + a);
    }
    for (int c = 0; c < k; ++c)
        for (Vertex u : cls[c]) {
            g.add_edge(u, sto0 + c);
            g.add_edge(sto0 + c, u);
        }

    std::vector<Vertex> s_conf, t_conf;
    for (Vertex v = 0; v < nm; ++v) {
        s_conf.push_back(v);
        t_conf.push_back(v);
    }
    for (int a = 0; a < na; ++a) {
        s_conf.push_back(src0 + a);
        t_conf.push_back(tgt0 + a);
    }
    Instance inst{std::move(g), true, Configuration(s_conf), Configuration(t_conf),
                  static_cast<long long>(na) + 2ll * k};
    inst.validate();
    return inst;
}

MoveSequence forward_sequence_directed(const MSIInstance& msi,
                                       const std::vector<Vertex>& planted) {
    msi.validate();
    check_planted(msi, planted);
    LevelDag ld = build_level_dag(msi.shape, msi.root);
    auto arcs = ld.dag.edges();
    const int nm = msi.host.vertex_count();
    const int na = static_cast<int>(arcs.size());
    const Vertex src0 = nm, tgt0 = nm + na, sto0 = nm + 2 * na;

    MoveSequence seq;
    auto push = [&](Vertex from, Vertex to, std::vector<Vertex> path, int label) {
        Move mv;
        mv.from = from;
        mv.to = to;
        mv.path = std::move(path);
        mv.label = label;
        seq.moves.push_back(std::move(mv));
    };
    for (int c = 0; c < msi.colors; ++c)
        push(planted[c], sto0 + c, {planted[c], sto0 + c}, planted[c]);
    for (int a = 0; a < na; ++a) {
        auto [i, j] = arcs[a];
        push(src0 + a, tgt0 + a, {src0 + a, planted[i], planted[j], tgt0 + a}, nm + a);
    }
    for (int c = 0; c < msi.colors; ++c)
        push(sto0 + c, planted[c], {sto0 + c, planted[c]}, planted[c]);
    return seq;
}

namespace {

/*
 * Shared deterministic layout of the undirected build. Vertex blocks, in
 * order: node-vertices, storages, per-superedge gadget vertices
 * (tail-side sources, tail-side targets, head-side sources, head-side
 * targets), per-retained-edge token paths, storage paths (index 0 = top),
 * linking paths (index 0 = left end).
 */
struct UndirLayout {
    int nm = 0, k = 0, ne = 0, nr = 0;
    LevelDag ld;
    RetainedEdges re;
    std::vector<std::vector<Vertex>> cls;
    ClockParameters clock;
    std::vector<int> se_level;           // per superedge
    std::vector<long long> se_tok;       // tokens per direction per superedge
    std::vector<int> edge_se;            // retained edge -> superedge
    long long sto0 = 0;
    std::vector<long long> gadget0;      // per superedge: block of 4*se_tok ids
    std::vector<long long> path0;        // per retained edge
    std::vector<long long> kp0;          // per superedge
    std::vector<long long> lp0;          // per link
    long long total = 0, edge_guess = 0;

    long long src(int p, int dir, long long s) const {
        return gadget0[p] + (2 * dir) * se_tok[p] + s;
    }
    long long tgt(int p, int dir, long long s) const {
        return gadget0[p] + (2 * dir + 1) * se_tok[p] + s;
    }
    long long chain(int p, long long t) const {
        const long long K = clock.K, L = clock.L;
        if (t < K) return kp0[p] + t;
        if (t < K + L) return lp0[p] + (t - K);
        return kp0[p + 1] + (K - 1 - (t - K - L));
    }
    long long mid(int e) const { return path0[e] + (clock.K - 1) / 2; }
};

UndirLayout undirected_layout(const MSIInstance& msi, long long cap) {
    msi.validate();
    if (msi.shape.edge_count() == 0)
        throw InputError("undirected build needs a shape with at least one edge");

    UndirLayout lay;
    lay.nm = msi.host.vertex_count();
    lay.k = msi.colors;
    lay.ld = build_level_dag(msi.shape, msi.root);
    lay.re = retained_edges(msi, lay.ld);
    lay.cls = color_classes(msi);
    lay.nr = static_cast<int>(lay.re.list.size());

    // clock ordering: by tail level, then head, then tail
    auto arcs = lay.ld.dag.edges();
    std::sort(arcs.begin(), arcs.end(), [&](auto a, auto b) {
        return std::tuple(lay.ld.level[a.first], a.second, a.first) <
               std::tuple(lay.ld.level[b.first], b.second, b.first);
    });
    lay.ne = static_cast<int>(arcs.size());
    lay.clock.superedges = arcs;
    for (auto [i, j] : arcs) lay.se_level.push_back(lay.ld.level[i]);

    const int zmax = *std::max_element(lay.se_level.begin(), lay.se_level.end());
    const long long k = lay.k;
    const long long Q = (3 * k * k + 1) / 2;
    lay.clock.Q = Q;
    lay.clock.level_tokens.assign(zmax + 1, 0);
    lay.clock.level_tokens[zmax] = Q;
    for (int y = zmax - 1; y >= 0; --y)
        lay.clock.level_tokens[y] = sat_mul(Q, lay.clock.level_tokens[y + 1]);
    long long qstar = 0;
    for (int p = 0; p < lay.ne; ++p) {
        lay.se_tok.push_back(lay.clock.level_tokens[lay.se_level[p]]);
        qstar = sat_add(qstar, sat_mul(2, lay.se_tok.back()));
    }
    lay.clock.Q_star = qstar;
    lay.clock.K = sat_add(sat_mul(2, qstar), k + 1);
    const long long K = lay.clock.K, ne = lay.ne;
    lay.clock.L = sat_add(sat_add(sat_mul(ne - 1, K), sat_add(qstar, 2 * k)),
                          sat_add(sat_mul(2, sat_mul(K, ne)), 1));
    lay.clock.budget = sat_mul(ne, lay.clock.L) - 1;

    lay.edge_se.assign(lay.nr, -1);
    for (int e = 0; e < lay.nr; ++e) {
        auto [tu, tv] = lay.re.oriented[e];
        int ci = msi.color[tu], cj = msi.color[tv];
        for (int p = 0; p < lay.ne; ++p)
            if (arcs[p] == std::make_pair(Vertex(ci), Vertex(cj))) {
                lay.edge_se[e] = p;
                break;
            }
        assert(lay.edge_se[e] >= 0);
    }

    lay.sto0 = lay.nm;
    long long next = lay.nm + lay.k;
    for (int p = 0; p < lay.ne; ++p) {
        lay.gadget0.push_back(next);
        next = sat_add(next, sat_mul(4, lay.se_tok[p]));
    }
    for (int e = 0; e < lay.nr; ++e) {
        lay.path0.push_back(next);
        next = sat_add(next, K);
    }
    for (int p = 0; p < lay.ne; ++p) {
        lay.kp0.push_back(next);
        next = sat_add(next, K);
    }
    for (int p = 0; p + 1 < lay.ne; ++p) {
        lay.lp0.push_back(next);
        next = sat_add(next, lay.clock.L);
    }
    lay.total = next;

    long long gads = 0;
    for (int p = 0; p < lay.ne; ++p) {
        auto [i, j] = arcs[p];
        long long fan = lay.cls[i].size() + lay.cls[j].size();
        gads = sat_add(gads, sat_mul(2 * lay.se_tok[p], fan));
    }
    lay.edge_guess = sat_add(lay.total, gads);

    if (lay.total > cap || lay.total > 2'000'000'000ll || lay.edge_guess > 50'000'000ll)
        throw CapExceededError(
            "undirected build refused: " + std::to_string(lay.total) + " vertices and about " +
            std::to_string(lay.edge_guess) + " edges predicted (vertex cap " +
            std::to_string(cap) + "; K=" + std::to_string(lay.clock.K) +
            ", L=" + std::to_string(lay.clock.L) + ")");
    return lay;
}

// S and T listings; equal indices share a label
void undirected_configs(const UndirLayout& lay, std::vector<Vertex>& s_conf,
                        std::vector<Vertex>& t_conf) {
    const long long K = lay.clock.K, L = lay.clock.L;
    for (int v = 0; v < lay.nm; ++v) {
        s_conf.push_back(v);
        t_conf.push_back(v);
    }
    for (int e = 0; e < lay.nr; ++e)
        for (long long t = 0; t < K; ++t) {
            s_conf.push_back(static_cast<Vertex>(lay.path0[e] + t));
            t_conf.push_back(static_cast<Vertex>(lay.path0[e] + t));
        }
    for (int p = 0; p < lay.ne; ++p)
        for (int dir = 0; dir < 2; ++dir)
            for (long long s = 0; s < lay.se_tok[p]; ++s) {
                s_conf.push_back(static_cast<Vertex>(lay.src(p, dir, s)));
                t_conf.push_back(static_cast<Vertex>(lay.tgt(p, dir, s)));
            }
    for (int p = 0; p + 1 < lay.ne; ++p)
        for (long long s = 0; s < K + L; ++s) {
            s_conf.push_back(static_cast<Vertex>(lay.chain(p, K + s)));
            t_conf.push_back(static_cast<Vertex>(lay.chain(p, s)));
        }
}

}  // namespace

UndirectedReduction reduce_msi_undirected(const MSIInstance& msi, long long vertex_cap) {
    UndirLayout lay = undirected_layout(msi, vertex_cap);
    const long long K = lay.clock.K, L = lay.clock.L;

    Graph g(static_cast<Vertex>(lay.total), false);
    for (int c = 0; c < lay.k; ++c)
        for (Vertex u : lay.cls[c]) g.add_edge(u, static_cast<Vertex>(lay.sto0 + c));
    for (int p = 0; p < lay.ne; ++p) {
        auto [i, j] = lay.clock.superedges[p];
        for (long long s = 0; s < lay.se_tok[p]; ++s) {
            for (Vertex u : lay.cls[i]) {
                g.add_edge(static_cast<Vertex>(lay.src(p, 0, s)), u);
                g.add_edge(static_cast<Vertex>(lay.tgt(p, 1, s)), u);
            }
            for (Vertex u : lay.cls[j]) {
                g.add_edge(static_cast<Vertex>(lay.tgt(p, 0, s)), u);
                g.add_edge(static_cast<Vertex>(lay.src(p, 1, s)), u);
            }
        }
    }
    for (int e = 0; e < lay.nr; ++e) {
        auto [u, v] = lay.re.list[e];
        for (long long t = 0; t + 1 < K; ++t)
            g.add_edge(static_cast<Vertex>(lay.path0[e] + t),
                       static_cast<Vertex>(lay.path0[e] + t + 1));
        g.add_edge(static_cast<Vertex>(lay.path0[e]), u);
        g.add_edge(static_cast<Vertex>(lay.path0[e] + K - 1), v);
        g.add_edge(static_cast<Vertex>(lay.mid(e)), static_cast<Vertex>(lay.kp0[lay.edge_se[e]]));
    }
    for (int p = 0; p < lay.ne; ++p)
        for (long long t = 0; t + 1 < K; ++t)
            g.add_edge(static_cast<Vertex>(lay.kp0[p] + t), static_cast<Vertex>(lay.kp0[p] + t + 1));
    for (int p = 0; p + 1 < lay.ne; ++p) {
        for (long long t = 0; t + 1 < L; ++t)
            g.add_edge(static_cast<Vertex>(lay.lp0[p] + t), static_cast<Vertex>(lay.lp0[p] + t + 1));
        g.add_edge(static_cast<Vertex>(lay.lp0[p]), static_cast<Vertex>(lay.kp0[p] + K - 1));
        g.add_edge(static_cast<Vertex>(lay.lp0[p] + L - 1),
                   static_cast<Vertex>(lay.kp0[p + 1] + K - 1));
    }

    std::vector<Vertex> s_conf, t_conf;
    undirected_configs(lay, s_conf, t_conf);
    Instance inst{std::move(g), true, Configuration(s_conf), Configuration(t_conf),
                  lay.clock.budget};
    inst.validate();
    return UndirectedReduction{std::move(inst), lay.clock};
}

void forward_sequence_undirected(const MSIInstance& msi, const std::vector<Vertex>& planted,
                                 const std::vector<std::pair<Vertex, Vertex>>& edge_choice,
                                 MoveSink& sink, long long vertex_cap) {
    check_planted(msi, planted);
    UndirLayout lay = undirected_layout(msi, vertex_cap);
    const long long K = lay.clock.K, L = lay.clock.L;

    // chosen retained edge per superedge; default is the planted pair
    std::vector<int> chosen(lay.ne, -1);
    for (int p = 0; p < lay.ne; ++p) {
        auto [i, j] = lay.clock.superedges[p];
        std::pair<Vertex, Vertex> want;
        if (edge_choice.empty()) {
            want = {std::min(planted[i], planted[j]), std::max(planted[i], planted[j])};
        } else {
            if (static_cast<int>(edge_choice.size()) != lay.ne)
                throw ConstructionError("one chosen edge per superedge required");
            auto [a, b] = edge_choice[p];
            want = {std::min(a, b), std::max(a, b)};
        }
        for (int e = 0; e < lay.nr; ++e)
            if (lay.edge_se[e] == p && lay.re.list[e] == want) {
                chosen[p] = e;
                break;
            }
        if (chosen[p] < 0)
            throw ConstructionError("no retained edge matches the choice for superedge " +
                                    std::to_string(p));
        auto [u, v] = lay.re.list[chosen[p]];
        if (!((u == planted[i] && v == planted[j]) || (u == planted[j] && v == planted[i])))
            throw ConstructionError("chosen edge for superedge " + std::to_string(p) +
                                    " does not join the planted vertices");
    }

    // label blocks mirror undirected_configs
    const long long lab_paths = lay.nm;
    const long long lab_gadgets = lab_paths + static_cast<long long>(lay.nr) * K;
    std::vector<long long> lab_gadget(lay.ne);
    long long lab_clock_base = 0;
    {
        long long acc = lab_gadgets;
        for (int p = 0; p < lay.ne; ++p) {
            lab_gadget[p] = acc;
            acc += 2 * lay.se_tok[p];
        }
        lab_clock_base = acc;
    }

    Move mv;
    auto emit = [&](long long from, long long to, int label) {
        mv.from = static_cast<Vertex>(from);
        mv.to = static_cast<Vertex>(to);
        mv.label = label;
        return sink.consume(mv);
    };

    // clearing order within an edge-path: middle first, then alternating sides
    std::vector<long long> clear_pos;
    clear_pos.reserve(K);
    {
        const long long m = (K - 1) / 2;
        clear_pos.push_back(m);
        for (long long d = 1; static_cast<long long>(clear_pos.size()) < K; ++d) {
            if (m - d >= 0) clear_pos.push_back(m - d);
            if (m + d < K && static_cast<long long>(clear_pos.size()) < K)
                clear_pos.push_back(m + d);
        }
    }

    for (int c = 0; c < lay.k; ++c) {
        mv.path = {planted[c], static_cast<Vertex>(lay.sto0 + c)};
        if (!emit(planted[c], lay.sto0 + c, planted[c])) return;
    }

    for (int p = 0; p < lay.ne; ++p) {
        const int e = chosen[p];
        const long long base = lay.path0[e];
        const long long m = (K - 1) / 2;
        auto [i, j] = lay.clock.superedges[p];
        const Vertex eu = lay.re.list[e].first;

        // empty the edge-path into the storage path, middle outward, bottom up
        for (long long idx = 0; idx < K; ++idx) {
            long long pos = clear_pos[idx];
            mv.path.clear();
            if (pos <= m)
                for (long long t = pos; t <= m; ++t) mv.path.push_back(static_cast<Vertex>(base + t));
            else
                for (long long t = pos; t >= m; --t) mv.path.push_back(static_cast<Vertex>(base + t));
            for (long long t = 0; t <= K - 1 - idx; ++t)
                mv.path.push_back(static_cast<Vertex>(lay.kp0[p] + t));
            if (!emit(base + pos, lay.kp0[p] + (K - 1 - idx),
                      static_cast<int>(lab_paths + static_cast<long long>(e) * K + pos)))
                return;
        }

        // gadget tokens cross the emptied path
        for (int dir = 0; dir < 2; ++dir) {
            const Vertex from_node = dir == 0 ? planted[i] : planted[j];
            const Vertex to_node = dir == 0 ? planted[j] : planted[i];
            for (long long s = 0; s < lay.se_tok[p]; ++s) {
                mv.path.clear();
                mv.path.push_back(static_cast<Vertex>(lay.src(p, dir, s)));
                mv.path.push_back(from_node);
                if (eu == from_node)
                    for (long long t = 0; t < K; ++t)
                        mv.path.push_back(static_cast<Vertex>(base + t));
                else
                    for (long long t = K - 1; t >= 0; --t)
                        mv.path.push_back(static_cast<Vertex>(base + t));
                mv.path.push_back(to_node);
                mv.path.push_back(static_cast<Vertex>(lay.tgt(p, dir, s)));
                if (!emit(lay.src(p, dir, s), lay.tgt(p, dir, s),
                          static_cast<int>(lab_gadget[p] + dir * lay.se_tok[p] + s)))
                    return;
            }
        }

        // refill: exact reverse of the emptying moves
        for (long long idx = K - 1; idx >= 0; --idx) {
            long long pos = clear_pos[idx];
            mv.path.clear();
            for (long long t = K - 1 - idx; t >= 0; --t)
                mv.path.push_back(static_cast<Vertex>(lay.kp0[p] + t));
            if (pos <= m)
                for (long long t = m; t >= pos; --t) mv.path.push_back(static_cast<Vertex>(base + t));
            else
                for (long long t = m; t <= pos; ++t) mv.path.push_back(static_cast<Vertex>(base + t));
            if (!emit(lay.kp0[p] + (K - 1 - idx), base + pos,
                      static_cast<int>(lab_paths + static_cast<long long>(e) * K + pos)))
                return;
        }

        // advance the clock one segment
        if (p + 1 < lay.ne) {
            for (long long s = 0; s < K + L; ++s) {
                mv.path.clear();
                for (long long t = K + s; t >= s; --t)
                    mv.path.push_back(static_cast<Vertex>(lay.chain(p, t)));
                if (!emit(lay.chain(p, K + s), lay.chain(p, s),
                          static_cast<int>(lab_clock_base + static_cast<long long>(p) * (K + L) + s)))
                    return;
            }
        }
    }

    for (int c = 0; c < lay.k; ++c) {
        mv.path = {static_cast<Vertex>(lay.sto0 + c), planted[c]};
        if (!emit(lay.sto0 + c, planted[c], planted[c])) return;
    }
}

MoveSequence forward_sequence_undirected(const MSIInstance& msi,
                                         const std::vector<Vertex>& planted,
                                         const std::vector<std::pair<Vertex, Vertex>>& edge_choice) {
    CollectSink sink;
    forward_sequence_undirected(msi, planted, edge_choice, sink);
    return std::move(sink.seq);
}

}  // namespace tokmove
