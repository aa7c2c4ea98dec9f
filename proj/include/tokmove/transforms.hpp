#pragma once

#include <string>
#include <vector>

#include "tokmove/instance.hpp"

namespace tokmove {

/**
 * Result of an instance-rewriting transform.  new_to_old maps each vertex of
 * the produced instance to the vertex it represents in the input, or -1 for
 * auxiliary vertices the transform invented.  Transforms compose; `name`
 * identifies the step for provenance chains kept by callers.
 */
struct TransformResult {
    Instance instance;
    std::vector<Vertex> new_to_old;
    std::string name;
};

/**
 * Drop obstacle vertices that provably never participate in a sequence of at
 * most `budget` moves: vertices unreachable from S\T, vertices that cannot
 * reach T\S, and vertices for which every route in or out already carries more
 * than `budget` obstacles (counted inclusively at both endpoints).  Requires a
 * contracted directed unlabelled instance; the yes/no answer at the given
 * budget is preserved.
 */
TransformResult prune_obstacles(const Instance& inst);

/**
 * Replace every vertex by a directed path holding its in-neighbour contacts,
 * a central vertex, and its out-neighbour contacts, so that total degree drops
 * to at most three.  Tokens live on the central vertices; shortest sequence
 * lengths are unchanged.  Directed unlabelled only.
 */
TransformResult to_max_degree_three(const Instance& inst);

/**
 * Subdivide every edge with `times` fresh internal vertices (times >= 1).
 * Shortest sequence lengths are unchanged.  Unlabelled only.
 */
TransformResult subdivide(const Instance& inst, int times);

}  // namespace tokmove
