#include <doctest.h>

#include <algorithm>
#include <string>

#include "tokmove/errors.hpp"
#include "tokmove/moves.hpp"
#include "tokmove/oracle.hpp"
#include "tokmove/reductions.hpp"
#include "util.hpp"

using namespace tokmove;
using namespace testutil;

namespace {

RBDSInstance tiny_rbds() {
    RBDSInstance r;
    r.blue_count = 1;
    r.red_count = 1;
    r.edges = {{0, 0}};
    r.k = 1;
    return r;
}

MSIInstance edge_msi() {
    MSIInstance m;
    m.colors = 2;
    m.host = make_graph(2, false, {{0, 1}});
    m.color = {0, 1};
    m.shape = make_graph(2, false, {{0, 1}});
    m.root = 0;
    return m;
}

MSIInstance c4_msi() {
    MSIInstance m;
    m.colors = 4;
    m.host = make_graph(4, false, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    m.color = {0, 1, 2, 3};
    m.shape = m.host;
    m.root = 0;
    return m;
}

MSIInstance path3_msi() {
    MSIInstance m;
    m.colors = 3;
    m.host = make_graph(3, false, {{0, 1}, {1, 2}});
    m.color = {0, 1, 2};
    m.shape = m.host;
    m.root = 0;
    return m;
}

}  // namespace

TEST_CASE("broom output at the smallest scale") {
    Instance uu = reduce_rbds(tiny_rbds(), Variant::UUTM);
    CHECK(uu.graph.vertex_count() == 3);
    CHECK(uu.budget == 2);
    CHECK_FALSE(uu.labelled);
    CHECK_FALSE(uu.graph.directed());

    Instance ld = reduce_rbds(tiny_rbds(), Variant::LDTM);
    CHECK(ld.graph.vertex_count() == 4);  // one private holding vertex per blue
    CHECK(ld.budget == 3);
    CHECK(ld.labelled);
    CHECK(ld.graph.directed());
    CHECK(ld.graph.has_edge(1, 3));
    CHECK(ld.graph.has_edge(3, 1));

    Instance lu = reduce_rbds(tiny_rbds(), Variant::LUTM);
    CHECK_FALSE(lu.graph.directed());
    CHECK(lu.budget == 3);
}

TEST_CASE("broom parameter identities on random inputs") {
    SplitMix64 rng(0x517e);
    for (int trial = 0; trial < 60; ++trial) {
        RBDSInstance r;
        r.blue_count = 1 + static_cast<int>(rng.below(3));
        r.red_count = 1 + static_cast<int>(rng.below(3));
        for (int b = 0; b < r.blue_count; ++b)
            for (int red = 0; red < r.red_count; ++red)
                if (rng.below(2)) r.edges.push_back({b, red});
        r.k = static_cast<int>(rng.below(r.blue_count + 1));
        for (Variant variant : {Variant::UUTM, Variant::UDTM, Variant::LUTM, Variant::LDTM}) {
            Instance inst = reduce_rbds(r, variant);
            InstanceStats st = instance_stats(inst);
            CHECK(static_cast<int>(st.s_only.size()) == r.red_count);
            long long slack = inst.budget - static_cast<long long>(st.s_only.size());
            CHECK(slack == (variant_labelled(variant) ? 2ll : 1ll) * r.k);
        }
    }
}

TEST_CASE("broom feasibility tracks brute-force domination at tiny scale") {
    // |B| = 2, |R| = 2, every edge set, every k: reachability within the
    // budget must equal the existence of k blues dominating all reds
    for (unsigned mask = 0; mask < 16; ++mask) {
        RBDSInstance r;
        r.blue_count = 2;
        r.red_count = 2;
        for (int b = 0; b < 2; ++b)
            for (int red = 0; red < 2; ++red)
                if (mask >> (2 * b + red) & 1) r.edges.push_back({b, red});
        for (int k = 0; k <= 2; ++k) {
            r.k = k;
            bool feasible = false;
            for (unsigned pick = 0; pick < 4; ++pick) {
                if (__builtin_popcount(pick) > k) continue;
                bool all = true;
                for (int red = 0; red < 2; ++red) {
                    bool dom = false;
                    for (int b = 0; b < 2; ++b)
                        if ((pick >> b & 1) &&
                            std::count(r.edges.begin(), r.edges.end(),
                                       std::make_pair(b, red)))
                            dom = true;
                    if (!dom) all = false;
                }
                if (all) feasible = true;
            }
            for (Variant variant : {Variant::UUTM, Variant::UDTM, Variant::LUTM, Variant::LDTM}) {
                Instance inst = reduce_rbds(r, variant);
                OracleResult res = shortest_transforming_sequence(inst);
                bool yes = res.reachable &&
                           static_cast<long long>(*res.shortest) <= inst.budget;
                CHECK(yes == feasible);
            }
        }
    }
}

TEST_CASE("level assignment from the root") {
    Graph edge = make_graph(2, false, {{0, 1}});
    LevelDag ld = build_level_dag(edge, 0);
    CHECK(ld.level == std::vector<int>{0, 1});
    CHECK(ld.dag.has_edge(0, 1));
    CHECK(ld.dag.edge_count() == 1);

    Graph c4 = make_graph(4, false, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    LevelDag c4ld = build_level_dag(c4, 0);
    CHECK(c4ld.level == std::vector<int>{0, 1, 2, 1});
    CHECK(c4ld.dag.edge_count() == 4);
    for (auto [u, v] : c4ld.dag.edges()) CHECK(c4ld.level[v] == c4ld.level[u] + 1);

    Graph odd = make_graph(3, false, {{0, 1}, {1, 2}, {0, 2}});
    CHECK_THROWS_AS(build_level_dag(odd, 0), InputError);
    Graph split = make_graph(3, false, {{0, 1}});
    CHECK_THROWS_AS(build_level_dag(split, 0), InputError);
}

TEST_CASE("directed build on a single shape edge") {
    Instance inst = reduce_msi_directed(edge_msi());
    CHECK(inst.labelled);
    CHECK(inst.graph.directed());
    CHECK(inst.budget == 5);  // one transfer plus two clearing and two filling moves
    InstanceStats st = instance_stats(inst);
    CHECK(st.free_count == 2);
    CHECK(st.s_only.size() == 1);

    MoveSequence seq = forward_sequence_directed(edge_msi(), {0, 1});
    CHECK(seq.size() == 5);
    CHECK(validate_sequence(inst, seq).kind == Verdict::ValidReachesTarget);
    OracleResult res = shortest_transforming_sequence(inst);
    REQUIRE(res.reachable);
    CHECK(*res.shortest == 5);
}

TEST_CASE("directed build satisfies the size identities") {
    for (const MSIInstance& msi : {edge_msi(), path3_msi(), c4_msi()}) {
        Instance inst = reduce_msi_directed(msi);
        InstanceStats st = instance_stats(inst);
        const int k = msi.colors;
        const long long edges = static_cast<long long>(msi.shape.edge_count());
        CHECK(inst.budget == edges + 2 * k);
        CHECK(st.free_count == k);
        CHECK(static_cast<long long>(st.s_only.size()) == edges);
    }
    Instance c4 = reduce_msi_directed(c4_msi());
    CHECK(c4.budget == 12);
}

TEST_CASE("directed forward sequence on richer hosts with decoys") {
    // two vertices per colour; the planted copy must use the right ones
    MSIInstance m;
    m.colors = 2;
    m.host = make_graph(4, false, {{0, 3}, {2, 1}, {0, 1}});
    m.color = {0, 1, 0, 1};
    m.shape = make_graph(2, false, {{0, 1}});
    m.root = 0;
    Instance inst = reduce_msi_directed(m);
    for (std::vector<Vertex> planted : {std::vector<Vertex>{0, 1}, {0, 3}}) {
        MoveSequence seq = forward_sequence_directed(m, planted);
        CHECK(validate_sequence(inst, seq).kind == Verdict::ValidReachesTarget);
    }
    CHECK_THROWS_AS(forward_sequence_directed(m, {1, 0}), ConstructionError);  // wrong colour
    CHECK_THROWS_AS(forward_sequence_directed(m, {2, 3}), ConstructionError);  // missing edge
}

TEST_CASE("clock constants for a single shape edge") {
    UndirectedReduction red = reduce_msi_undirected(edge_msi());
    CHECK(red.clock.Q == 6);
    CHECK(red.clock.Q_star == 12);
    CHECK(red.clock.K == 27);
    CHECK(red.clock.L == 71);
    CHECK(red.instance.budget == 70);  // one superedge: budget equals L - 1
    CHECK(red.instance.graph.vertex_count() == 82);
    CHECK(red.clock.level_tokens == std::vector<long long>{6});

    MoveSequence seq = forward_sequence_undirected(edge_msi(), {0, 1});
    CHECK(static_cast<long long>(seq.size()) == red.instance.budget);
    CHECK(validate_sequence(red.instance, seq).kind == Verdict::ValidReachesTarget);
}

TEST_CASE("clock build on a two-edge shape keeps the advertised shape counts") {
    MSIInstance msi = path3_msi();
    UndirectedReduction red = reduce_msi_undirected(msi);
    const long long k = 3, E = 2;
    const long long Q = (3 * k * k + 1) / 2;
    CHECK(red.clock.Q == Q);
    CHECK(red.clock.level_tokens == std::vector<long long>{Q * Q, Q});
    const long long qstar = 2 * Q * Q + 2 * Q;
    CHECK(red.clock.Q_star == qstar);
    const long long K = 2 * qstar + k + 1;
    CHECK(red.clock.K == K);
    const long long L = (E - 1) * K + qstar + 2 * k + 2 * K * E + 1;
    CHECK(red.clock.L == L);
    CHECK(red.instance.budget == E * L - 1);
    // closed-form vertex count: nodes, storages, gadgets, edge paths,
    // storage paths, linking paths
    long long expect = 3 + 3 + 2 * qstar + (2 + 2) * K + (E - 1) * L;
    CHECK(red.instance.graph.vertex_count() == expect);
    InstanceStats st = instance_stats(red.instance);
    CHECK(st.free_count == k);

    ValidatingSink sink(red.instance);
    forward_sequence_undirected(msi, {0, 1, 2}, {}, sink);
    CHECK_FALSE(sink.failed());
    CHECK(sink.at_target());
    CHECK(static_cast<long long>(sink.count()) == red.instance.budget);
}

TEST_CASE("clock builds refuse oversized outputs by prediction") {
    try {
        reduce_msi_undirected(edge_msi(), 50);
        FAIL("expected a refusal");
    } catch (const CapExceededError& e) {
        std::string msg = e.what();
        CHECK(msg.find("82") != std::string::npos);  // predicted vertex count
        CHECK(msg.find("50") != std::string::npos);  // the cap itself
    }
}

TEST_CASE("clock forward sequence rejects inconsistent planting") {
    CHECK_THROWS_AS(forward_sequence_undirected(edge_msi(), {0}), ConstructionError);
    CHECK_THROWS_AS(forward_sequence_undirected(edge_msi(), {1, 0}), ConstructionError);
    MSIInstance no_edge = edge_msi();
    no_edge.host = Graph(2, false);
    CHECK_THROWS_AS(forward_sequence_undirected(no_edge, {0, 1}), ConstructionError);
}

TEST_CASE("shape validation rejects malformed inputs") {
    MSIInstance m = edge_msi();
    m.color = {0, 5};
    CHECK_THROWS_AS(m.validate(), InputError);
    m = edge_msi();
    m.root = 9;
    CHECK_THROWS_AS(m.validate(), InputError);
    m = edge_msi();
    m.shape = Graph(3, false);
    CHECK_THROWS_AS(m.validate(), InputError);
    RBDSInstance r = tiny_rbds();
    r.edges = {{0, 7}};
    CHECK_THROWS_AS(r.validate(), InputError);
    MSIInstance lonely = edge_msi();
    lonely.shape = Graph(2, false);  // no shape edge: nothing to schedule the clock on
    CHECK_THROWS_AS(reduce_msi_undirected(lonely), InputError);
}
