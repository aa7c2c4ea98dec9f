#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tokmove/instance.hpp"

namespace tokmove {

struct SteinerTree {
    std::vector<Vertex> vertices;                   // sorted
    std::vector<std::pair<Vertex, Vertex>> edges;   // u < v, sorted
    int size() const { return static_cast<int>(vertices.size()); }
};

/**
 * Minimum-vertex Steiner tree connecting the given terminals in an undirected
 * graph, by dynamic programming over (terminal subset, attachment vertex).
 * Ties are broken by a fixed fill order, so the returned tree is
 * deterministic.  absent when the terminals are not all in one component.
 */
std::optional<SteinerTree> min_steiner_tree(const Graph& g, const std::vector<Vertex>& terminals);

}  // namespace tokmove
