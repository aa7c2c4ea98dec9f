#pragma once

#include <map>
#include <utility>
#include <vector>

#include "tokmove/instance.hpp"

namespace tokmove {

/**
 * Correspondence between a kernel produced by free-vertex elimination and the
 * original instance.  Every kernel edge has a stored original path whose
 * intermediate vertices are eliminated (hence always token-free) vertices.
 */
struct ContractionMap {
    std::vector<Vertex> kept;            // kernel vertex -> original vertex, ascending
    std::vector<Vertex> orig_to_kernel;  // -1 for eliminated vertices
    bool directed = false;
    // kernel edge -> original path; undirected edges keyed with u < v and the
    // path stored from kept[u] to kept[v]
    std::map<std::pair<Vertex, Vertex>, std::vector<Vertex>> shortcuts;

    const std::vector<Vertex>& edge_path(Vertex ku, Vertex kv, std::vector<Vertex>& scratch) const;
};

/**
 * Eliminate every vertex outside S ∪ T, reconnecting each in/out neighbour
 * pair of the eliminated vertex.  The kernel keeps the token sets and budget;
 * shortest transforming sequence lengths are unchanged.  Unlabelled only.
 */
std::pair<Instance, ContractionMap> contract(const Instance& inst);

/**
 * Expand a kernel sequence move by move into the original graph, splicing the
 * stored edge paths and short-cutting any repeated vertices out of the
 * resulting walks.
 */
MoveSequence lift_sequence(const ContractionMap& map, const MoveSequence& seq);

}  // namespace tokmove
