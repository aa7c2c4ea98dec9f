#pragma once

#include <utility>
#include <vector>

#include "tokmove/graph.hpp"
#include "tokmove/instance.hpp"
#include "tokmove/moves.hpp"

namespace tokmove {

/** Set-cover style input: pick at most k blue vertices dominating every red one. */
struct RBDSInstance {
    int blue_count = 0;
    int red_count = 0;
    std::vector<std::pair<int, int>> edges;  // (blue index, red index)
    int k = 0;

    void validate() const;
};

/**
 * Broom-shaped hard instance. Vertices 0..|R|-1 form the handle path W,
 * then come the blue vertices, the red vertices, and (labelled variants
 * only) one private holding vertex per blue vertex. S = W u B, T = B u R;
 * the budget is |R|+k for the unlabelled variants and |R|+2k for the
 * labelled ones. In labelled outputs token i of W is paired with red
 * vertex i and every blue token stays put.
 */
Instance reduce_rbds(const RBDSInstance& rbds, Variant variant);

/** Multicolored-subgraph input: find a copy of `shape` in `host` hitting each
 * colour class once, with host edges allowed only between paired colours. */
struct MSIInstance {
    int colors = 0;
    Graph host{0, false};     // the coloured graph searched for the copy
    std::vector<int> color;   // per host vertex, in [0, colors)
    Graph shape{0, false};    // the graph whose copy is sought, on the colour set
    Vertex root = 0;          // breadth-first root for levelling the shape

    void validate() const;
};

struct LevelDag {
    Graph dag{0, true};
    std::vector<int> level;
};

/** Breadth-first levels from the root; every shape edge oriented from the
 * lower level to the higher. Disconnected or odd-cycle shapes are rejected. */
LevelDag build_level_dag(const Graph& shape, Vertex root);

/**
 * Directed labelled instance encoding the colourful-copy search. One
 * node-vertex per host vertex; per shape arc a tokened source vertex and a
 * free target vertex spanning the two colour classes; per colour class a
 * storage vertex on two-cycles with its node-vertices. Budget |E(shape)|+2k
 * where k is the colour count; the free vertices are exactly the k storages.
 */
Instance reduce_msi_directed(const MSIInstance& msi);

/** Certifying sequence for a planted colourful copy: k clearing moves into
 * the storages, one transfer per shape arc, k filling moves back. */
MoveSequence forward_sequence_directed(const MSIInstance& msi,
                                       const std::vector<Vertex>& planted);

struct ClockParameters {
    long long Q = 0;       // token count at the deepest level
    long long Q_star = 0;  // total source-gadget vertices
    long long K = 0;       // storage-path and edge-path length
    long long L = 0;       // linking-path length
    long long budget = 0;  // |E(shape)| * L - 1
    std::vector<long long> level_tokens;              // per level, deepest last
    std::vector<std::pair<Vertex, Vertex>> superedges;  // shape arcs in clock order
};

struct UndirectedReduction {
    Instance instance;
    ClockParameters clock;
};

/**
 * Undirected labelled instance with the clock gadget: per-edge token paths of
 * length K, per-arc source/target gadgets repeated level_tokens[r] times per
 * direction, and |E(shape)| storage paths joined by |E(shape)|-1 linking
 * paths whose tokens advance by exactly K vertices each move. Predicted
 * vertex counts beyond `vertex_cap` are refused up front.
 */
UndirectedReduction reduce_msi_undirected(const MSIInstance& msi,
                                          long long vertex_cap = 1'000'000);

/**
 * Certifying sequence for a planted copy, streamed move by move. For each
 * superedge in clock order: its chosen edge-path empties into the storage
 * path, the gadget tokens cross, the edge-path refills, and the clock
 * advances one segment. `edge_choice` may be empty, in which case the edge
 * between the planted endpoints of each superedge is used.
 */
void forward_sequence_undirected(const MSIInstance& msi, const std::vector<Vertex>& planted,
                                 const std::vector<std::pair<Vertex, Vertex>>& edge_choice,
                                 MoveSink& sink, long long vertex_cap = 1'000'000);

MoveSequence forward_sequence_undirected(const MSIInstance& msi,
                                         const std::vector<Vertex>& planted,
                                         const std::vector<std::pair<Vertex, Vertex>>& edge_choice = {});

}  // namespace tokmove
