#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace tokmove {

using Vertex = std::int32_t;

/**
 * Simple graph or digraph on densely numbered vertices 0..n-1.
 * Adjacency lists are kept sorted, so neighbour iteration order is
 * deterministic and membership tests are logarithmic.  Self-loops are
 * rejected; duplicate insertions are reported via the return value.
 */
class Graph {
public:
    Graph() = default;
    Graph(Vertex n, bool directed) : n_(n), directed_(directed), out_(n), in_(directed ? n : 0) {}

    Vertex vertex_count() const { return n_; }
    bool directed() const { return directed_; }

    /** Insert edge (arc u->v when directed).  Returns false if already present. */
    bool add_edge(Vertex u, Vertex v);
    bool has_edge(Vertex u, Vertex v) const;

    const std::vector<Vertex>& out(Vertex v) const { return out_[v]; }
    const std::vector<Vertex>& in(Vertex v) const { return directed_ ? in_[v] : out_[v]; }

    /** Undirected edges are counted once. */
    std::size_t edge_count() const { return edge_count_; }

    /** Canonical edge list: sorted pairs, u < v for undirected graphs. */
    std::vector<std::pair<Vertex, Vertex>> edges() const;

    /** Arc-reversed copy (directed only; identity for undirected). */
    Graph reversed() const;

    bool operator==(const Graph& other) const {
        return n_ == other.n_ && directed_ == other.directed_ && out_ == other.out_;
    }

private:
    Vertex n_ = 0;
    bool directed_ = false;
    std::size_t edge_count_ = 0;
    std::vector<std::vector<Vertex>> out_;
    std::vector<std::vector<Vertex>> in_;
};

/** True if the undirected view (each arc contributes one edge, antiparallel
 *  arcs count as a multi-edge) is acyclic. */
bool is_forest(const Graph& g);

/** Degree of each vertex in the undirected view described above. */
std::vector<int> underlying_degrees(const Graph& g);

}  // namespace tokmove
