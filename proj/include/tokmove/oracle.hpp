#pragma once

#include <cstdint>
#include <optional>

#include "tokmove/instance.hpp"

namespace tokmove {

struct OracleOptions {
    std::uint64_t cap = 10'000'000;  // refuse when the state space can exceed this
    bool witness = false;            // reconstruct a shortest sequence
};

struct OracleResult {
    bool reachable = false;
    std::optional<std::uint64_t> shortest;  // move count, present iff reachable
    std::optional<MoveSequence> witness;
};

/**
 * Exact shortest transforming sequence by breadth-first search over
 * configurations (vertex sets when unlabelled, ordered tuples when labelled).
 * The budget on the instance is ignored; callers compare against it.
 * Throws CapExceededError instead of attempting an oversized search.
 */
OracleResult shortest_transforming_sequence(const Instance& inst, const OracleOptions& opts = {});

/**
 * Same search restricted to sequences in which no token moves twice.
 * Unlabelled variants only.
 */
OracleResult shortest_move_once(const Instance& inst, const OracleOptions& opts = {});

/** Upper bound on the raw configuration count, used for the cap check. */
std::uint64_t configuration_space_size(const Instance& inst);

}  // namespace tokmove
