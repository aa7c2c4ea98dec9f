#include "tokmove/report.hpp"

#include <json.hpp>

namespace tokmove {

void RunReport::describe(const Instance& inst) {
    InstanceStats st = instance_stats(inst);
    variant = variant_name(inst.variant());
    n = inst.graph.vertex_count();
    m = inst.graph.edge_count();
    k = st.k;
    budget = inst.budget;
    free_count = st.free_count;
    sym_diff = static_cast<int>(st.sym_diff.size());
}

std::string RunReport::to_json() const {
    nlohmann::ordered_json j;
    j["variant"] = variant;
    j["n"] = n;
    j["m"] = m;
    j["k"] = k;
    j["budget"] = budget;
    j["free"] = free_count;
    j["sym_diff"] = sym_diff;
    j["decision"] = decision;
    if (sequence_length >= 0) j["sequence_length"] = sequence_length;
    j["wall_ms"] = wall_ms;
    j["method"] = method;
    j["transform_chain"] = transform_chain;
    if (!reason.empty()) j["reason"] = reason;
    return j.dump(2) + "\n";
}

}  // namespace tokmove
