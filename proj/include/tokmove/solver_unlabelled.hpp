#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "tokmove/instance.hpp"
#include "tokmove/steiner.hpp"

namespace tokmove {

/** One group of a balanced partition: equally many departures and arrivals. */
struct BalancedGroup {
    std::vector<Vertex> sources;  // subset of S \ T, ascending
    std::vector<Vertex> sinks;    // subset of T \ S, ascending
};

using BalancedPartition = std::vector<BalancedGroup>;

/**
 * Visit every partition of s_only ∪ t_only into exactly d groups, each
 * holding the same number of sources and sinks, without duplicates up to
 * group order.  The visitor returns false to stop early.
 */
void enumerate_balanced_partitions(const std::vector<Vertex>& s_only,
                                   const std::vector<Vertex>& t_only, int d,
                                   const std::function<bool(const BalancedPartition&)>& visit);

/** Convenience collector for tests. */
std::vector<BalancedPartition> balanced_partitions(const std::vector<Vertex>& s_only,
                                                   const std::vector<Vertex>& t_only, int d);

/** An accepted plan: one minimum connector tree per group plus its move bill. */
struct PartitionPlan {
    BalancedPartition groups;
    std::vector<SteinerTree> trees;
    long long total_moves = 0;
};

struct SolveResult {
    bool yes = false;
    std::optional<MoveSequence> sequence;  // in original instance coordinates
    std::optional<PartitionPlan> plan;     // kernel coordinates
    std::optional<Instance> kernel;        // the reduced instance actually solved
    std::optional<MoveSequence> kernel_sequence;
    std::string method;
};

/**
 * Decide an undirected unlabelled instance: contract, then search group
 * counts d = 1..budget for a balanced partition whose minimum connector trees
 * bill at most `budget` moves (each tree pays its tokens: departures plus
 * obstacles on it).  When the accepted trees are pairwise vertex-disjoint the
 * planned sequence is emitted directly; otherwise the token-count search
 * supplies the witness.
 */
SolveResult solve_uutm(const Instance& inst);

/**
 * Exhaustive search for a sequence on a tree in which every token moves
 * exactly once and ends on the target set, using tree edges only.  Prefers
 * candidates that traverse the whole tree.  absent when no such sequence
 * exists.
 */
std::optional<MoveSequence> schedule_tree_bounded(const Graph& tree, const Configuration& s,
                                                  const Configuration& t);

/**
 * Constructive scheduler for a directed tree: given a bijection pairing each
 * token with its destination (never its own vertex) such that a directed path
 * runs from token to destination, emit a valid sequence moving every token
 * exactly once.  Throws InputError when the mapping breaks those rules.
 */
MoveSequence schedule_directed_tree(const Graph& tree, const Configuration& s,
                                    const Configuration& t,
                                    const std::vector<std::pair<Vertex, Vertex>>& mapping);

/**
 * Exact decision-and-witness search over which obstacles move, how departures
 * pair with arrivals, and in what order, bounded by
 * min(budget, |S\T| + |S∩T|) moves.  Undirected or directed, unlabelled.
 */
SolveResult solve_by_k(const Instance& inst);

}  // namespace tokmove
