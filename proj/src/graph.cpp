#include "tokmove/graph.hpp"

#include <algorithm>
#include <numeric>

#include "tokmove/errors.hpp"

namespace tokmove {

namespace {

bool sorted_insert(std::vector<Vertex>& list, Vertex v) {
    auto it = std::lower_bound(list.begin(), list.end(), v);
    if (it != list.end() && *it == v) return false;
    list.insert(it, v);
    return true;
}

bool sorted_contains(const std::vector<Vertex>& list, Vertex v) {
    return std::binary_search(list.begin(), list.end(), v);
}

}  // namespace

bool Graph::add_edge(Vertex u, Vertex v) {
    if (u < 0 || u >= n_ || v < 0 || v >= n_)
        throw InputError("edge endpoint out of range: " + std::to_string(u) + " " + std::to_string(v));
    if (u == v) throw InputError("self-loop rejected at vertex " + std::to_string(u));
    if (!sorted_insert(out_[u], v)) return false;
    if (directed_)
        sorted_insert(in_[v], u);
    else
        sorted_insert(out_[v], u);
    ++edge_count_;
    return true;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    if (u < 0 || u >= n_ || v < 0 || v >= n_) return false;
    return sorted_contains(out_[u], v);
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
    std::vector<std::pair<Vertex, Vertex>> result;
    result.reserve(edge_count_);
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v : out_[u])
            if (directed_ || u < v) result.emplace_back(u, v);
    return result;
}

Graph Graph::reversed() const {
    if (!directed_) return *this;
    Graph r(n_, true);
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v : out_[u]) r.add_edge(v, u);
    return r;
}

std::vector<int> underlying_degrees(const Graph& g) {
    std::vector<int> deg(g.vertex_count(), 0);
    for (Vertex u = 0; u < g.vertex_count(); ++u)
        for (Vertex v : g.out(u)) {
            if (g.directed()) {
                ++deg[u];
                ++deg[v];
            } else if (u < v) {
                ++deg[u];
                ++deg[v];
            }
        }
    return deg;
}

bool is_forest(const Graph& g) {
    const Vertex n = g.vertex_count();
    std::vector<Vertex> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](Vertex x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto [u, v] : g.edges()) {
        Vertex a = find(u), b = find(v);
        if (a == b) return false;  // covers antiparallel arc pairs too
        parent[a] = b;
    }
    return true;
}

}  // namespace tokmove
