#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tokmove/instance.hpp"

namespace tokmove {

/**
 * Shortest path from s to t all of whose intermediate vertices are token-free;
 * the endpoints themselves are exempt from the occupancy test.  BFS scans
 * neighbours in ascending order, so among equally short paths the result is
 * deterministic.  absent when no such path exists.
 */
std::optional<std::vector<Vertex>> find_free_path(const Graph& g, const std::vector<char>& occupied,
                                                  Vertex s, Vertex t);
std::optional<std::vector<Vertex>> find_free_path(const Graph& g,
                                                  const std::vector<Vertex>& occupied, Vertex s,
                                                  Vertex t);

/** Free vertices reachable from s through free intermediates, ascending. */
std::vector<Vertex> free_reachable(const Graph& g, const std::vector<char>& occupied, Vertex s);

std::vector<char> occupancy_mask(const Graph& g, const Configuration& c);

/**
 * Apply one move to a configuration.  Throws InputError when no token sits on
 * the source or the target is occupied.  The move's path is not inspected
 * here; path discipline belongs to sequence validation.
 */
Configuration apply_move(const Configuration& c, Vertex from, Vertex to, bool labelled);

enum class PathCheck {
    Strict,   // recorded paths must themselves be valid free paths
    Lenient,  // paths are re-derived, recorded ones ignored
};

struct Verdict {
    enum Kind { ValidReachesTarget, ValidWrongFinal, Invalid } kind = Invalid;
    std::size_t index = 0;  // offending move for Invalid
    std::string reason;

    bool valid() const { return kind != Invalid; }
    bool ok() const { return kind == ValidReachesTarget; }
};

/** Replays a sequence move by move against an instance. */
class Replay {
public:
    explicit Replay(const Instance& inst);

    /** Apply the next move; returns a reason string on rejection. */
    std::optional<std::string> step(const Move& mv, PathCheck mode = PathCheck::Strict);

    bool at_target() const;
    const std::vector<char>& occupied() const { return occupied_; }
    /** Current vertex of each token, indexed by label (source order). */
    const std::vector<Vertex>& positions() const { return positions_; }

private:
    const Instance& inst_;
    std::vector<char> occupied_;
    std::vector<Vertex> positions_;
    std::vector<int> label_at_;  // vertex -> token index, -1 when free
    std::vector<std::uint64_t> stamp_;  // per-vertex visit stamp for path checks
    std::uint64_t stamp_counter_ = 0;
};

Verdict validate_sequence(const Instance& inst, const MoveSequence& seq,
                          PathCheck mode = PathCheck::Strict);

/**
 * Subgraph of g induced on the union of the sequence's path edges: same vertex
 * count, only traversed edges.  Throws InputError if a path uses a missing edge.
 */
Graph induced_move_graph(const Graph& g, const MoveSequence& seq);

/** Streaming consumer used where materialising a sequence would be wasteful. */
struct MoveSink {
    virtual ~MoveSink() = default;
    /** Return false to stop emission early. */
    virtual bool consume(const Move& mv) = 0;
};

struct CollectSink : MoveSink {
    MoveSequence seq;
    bool consume(const Move& mv) override {
        seq.moves.push_back(mv);
        return true;
    }
};

/** Validates moves as they stream by; remembers the first failure. */
class ValidatingSink : public MoveSink {
public:
    explicit ValidatingSink(const Instance& inst, PathCheck mode = PathCheck::Strict)
        : replay_(inst), mode_(mode) {}

    bool consume(const Move& mv) override {
        if (auto err = replay_.step(mv, mode_)) {
            error_ = *err;
            error_index_ = count_;
            return false;
        }
        ++count_;
        return true;
    }

    std::size_t count() const { return count_; }
    bool failed() const { return error_.has_value(); }
    const std::optional<std::string>& error() const { return error_; }
    std::size_t error_index() const { return error_index_; }
    bool at_target() const { return replay_.at_target(); }

private:
    Replay replay_;
    PathCheck mode_;
    std::size_t count_ = 0;
    std::size_t error_index_ = 0;
    std::optional<std::string> error_;
};

}  // namespace tokmove
