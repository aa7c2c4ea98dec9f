#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tokmove/graph.hpp"

namespace tokmove {

/**
 * Token placement.  For unlabelled problems only the vertex set matters;
 * for labelled problems position i in the list is the token with label i.
 */
class Configuration {
public:
    Configuration() = default;
    explicit Configuration(std::vector<Vertex> tokens) : tokens_(std::move(tokens)) {}

    std::size_t size() const { return tokens_.size(); }
    const std::vector<Vertex>& tokens() const { return tokens_; }
    Vertex operator[](std::size_t i) const { return tokens_[i]; }

    bool contains(Vertex v) const;
    std::vector<Vertex> sorted() const;
    bool same_set(const Configuration& other) const { return sorted() == other.sorted(); }

    bool operator==(const Configuration& other) const = default;

private:
    std::vector<Vertex> tokens_;
};

enum class Variant { UUTM, UDTM, LUTM, LDTM };

const char* variant_name(Variant v);
Variant variant_from_name(const std::string& name);
bool variant_labelled(Variant v);
bool variant_directed(Variant v);

/** One rearrangement problem: move tokens from source to target within budget moves. */
struct Instance {
    Graph graph;
    bool labelled = false;
    Configuration source;
    Configuration target;
    long long budget = 0;

    Variant variant() const;
    /** Throws InputError on inconsistent data (|S| != |T|, repeats, range). */
    void validate() const;
};

/** A single token move along an explicitly recorded free path. */
struct Move {
    Vertex from = -1;
    Vertex to = -1;
    std::vector<Vertex> path;  // from .. to, pairwise distinct
    int label = -1;            // token label, -1 when unlabelled

    bool operator==(const Move&) const = default;
};

struct MoveSequence {
    std::vector<Move> moves;

    std::size_t size() const { return moves.size(); }
    bool empty() const { return moves.empty(); }

    bool operator==(const MoveSequence&) const = default;
};

struct InstanceStats {
    int k = 0;                      // tokens
    int free_count = 0;             // vertices holding no token in S or T
    std::vector<Vertex> obstacles;  // S ∩ T, sorted
    std::vector<Vertex> s_only;     // S \ T, sorted
    std::vector<Vertex> t_only;     // T \ S, sorted
    std::vector<Vertex> sym_diff;   // S Δ T, sorted
};

InstanceStats instance_stats(const Instance& inst);

}  // namespace tokmove
