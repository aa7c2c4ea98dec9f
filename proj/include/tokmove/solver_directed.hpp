#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tokmove/graph.hpp"
#include "tokmove/instance.hpp"
#include "tokmove/solver_unlabelled.hpp"

namespace tokmove {

/**
 * Directed forest with per-vertex labels. Label 0 marks pool vertices; labels
 * 1..delta name the departure slots and delta+1..2*delta the arrival slots.
 * Each non-pool label appears at most once.
 */
struct LabelledForestWitness {
    int size = 0;
    int delta = 0;
    std::vector<std::pair<Vertex, Vertex>> arcs;
    std::vector<int> labels;

    Graph graph() const;
    void validate() const;
    /// Identical codes exactly for label-preserving isomorphic witnesses.
    std::string canonical_code() const;
};

/// All witnesses on `size` vertices, deduplicated up to label-preserving
/// isomorphism, sorted by canonical code. With `require_all_labels` every
/// non-pool label must be used exactly once instead of at most once.
std::vector<LabelledForestWitness> enumerate_labelled_forests(int size, int delta,
                                                              bool require_all_labels = false);

struct WeightedDigraph {
    Graph graph{0, true};
    std::vector<std::vector<long long>> arc_weight;  // parallel to graph.out(v)

    long long weight(Vertex u, Vertex v) const;
    void set_weight(Vertex u, Vertex v, long long w);
    static WeightedDigraph uniform(const Graph& g, long long w);
};

/**
 * Pendant-augmented pattern/host pair. A vertex labelled i on either side
 * gains i degree-one in-neighbours joined by arcs of weight i*q when i is a
 * departure slot, and (slot index)*q out-neighbours for arrival slots; every
 * plain arc keeps weight one. A label-respecting embedding of the witness
 * exists exactly when some embedded copy of the pattern reaches full_weight.
 */
struct WeightedGadgetPair {
    WeightedDigraph host;
    WeightedDigraph pattern;
    int q = 0;
    long long full_weight = 0;
    std::vector<Vertex> host_anchor;  // label -> host vertex, entry 0 unused
};

struct DirectedSolveOptions {
    double failure_bound = 1e-3;  // allowed one-sided error of the random embedding search
    int exact_threshold = 15;     // host size at or below which search is exhaustive
    enum class Engine { Gadget, Direct } engine = Engine::Gadget;
    std::uint64_t seed = 0x51ec38f05979ecb9ull;
    std::uint64_t oracle_cap = 10'000'000;
    std::optional<std::uint64_t> trial_override;
    int threads = 1;
};

struct EmbeddingResult {
    std::vector<Vertex> map;  // pattern vertex -> host vertex
    long long weight = 0;
};

/// True when the witness both admits an in-budget transformation on its own
/// vertices (pool vertices doubling as fixed tokens) and embeds in the
/// instance graph with departure/arrival labels landing on their vertices.
bool is_witness(const LabelledForestWitness& witness, const Instance& inst,
                const DirectedSolveOptions& opts = {});

WeightedGadgetPair build_weight_gadget(const Instance& inst, const LabelledForestWitness& witness);

/// Heaviest embedded copy of pair.pattern inside pair.host; exhaustive for
/// hosts at or below opts.exact_threshold, colour-coded sampling otherwise.
/// With `target` set, sampling stops at the first copy reaching it.
std::optional<EmbeddingResult> max_weight_forest_embedding(
    const WeightedGadgetPair& pair, const DirectedSolveOptions& opts = {},
    std::optional<long long> target = std::nullopt);

/// Exhaustive label-respecting embedding of the witness into the instance graph.
std::optional<std::vector<Vertex>> exact_label_embedding(const LabelledForestWitness& witness,
                                                         const Instance& inst);

SolveResult solve_udtm(const Instance& inst, const DirectedSolveOptions& opts = {});

}  // namespace tokmove
