#pragma once

#include <string>
#include <vector>

#include "tokmove/instance.hpp"

namespace tokmove {

/** Machine-readable record of one run, serialized as JSON with a fixed field order. */
struct RunReport {
    std::string variant;
    int n = 0;
    long long m = 0;
    int k = 0;
    long long budget = 0;
    int free_count = 0;
    int sym_diff = 0;
    std::string decision;  // yes | no | unknown
    long long sequence_length = -1;  // -1 when no sequence was produced
    double wall_ms = 0.0;
    std::string method;
    std::vector<std::string> transform_chain;
    std::string reason;  // set when decision == unknown

    /** Fills the instance-shape fields, leaving the outcome fields alone. */
    void describe(const Instance& inst);

    std::string to_json() const;
};

}  // namespace tokmove
