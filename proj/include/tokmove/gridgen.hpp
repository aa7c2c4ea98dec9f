#pragma once

#include <cstdint>
#include <vector>

#include "tokmove/instance.hpp"

namespace tokmove {

/**
 * Seeded generator of rearrangement instances on a 4-neighbour grid. Sites
 * are numbered row-major; the source configuration loads each site
 * independently with the given probability. The target shape holds exactly
 * as many tokens as were loaded, chosen deterministically:
 *   Block   a vertically centred band of rows, filled row-major
 *   Rows    rows from the top, filled row-major
 *   Custom  an explicit site list whose length must match the load
 */
struct GridSpec {
    enum class Shape { Block, Rows, Custom };

    int rows = 1;
    int cols = 1;
    double fill_probability = 0.5;
    std::uint64_t seed = 1;
    Shape shape = Shape::Block;
    std::vector<Vertex> custom;  // used when shape == Custom
    bool labelled = false;
    long long budget_override = -1;  // < 0 picks |S delta T| + |S inter T|
};

Instance gen_grid(const GridSpec& spec);

}  // namespace tokmove
