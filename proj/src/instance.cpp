#include "tokmove/instance.hpp"

#include <algorithm>

#include "tokmove/errors.hpp"

namespace tokmove {

bool Configuration::contains(Vertex v) const {
    return std::find(tokens_.begin(), tokens_.end(), v) != tokens_.end();
}

std::vector<Vertex> Configuration::sorted() const {
    std::vector<Vertex> s = tokens_;
    std::sort(s.begin(), s.end());
    return s;
}

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::UUTM: return "UUTM";
        case Variant::UDTM: return "UDTM";
        case Variant::LUTM: return "LUTM";
        case Variant::LDTM: return "LDTM";
    }
    return "?";
}

Variant variant_from_name(const std::string& name) {
    if (name == "UUTM") return Variant::UUTM;
    if (name == "UDTM") return Variant::UDTM;
    if (name == "LUTM") return Variant::LUTM;
    if (name == "LDTM") return Variant::LDTM;
    throw InputError("unknown problem code: " + name);
}

bool variant_labelled(Variant v) { return v == Variant::LUTM || v == Variant::LDTM; }
bool variant_directed(Variant v) { return v == Variant::UDTM || v == Variant::LDTM; }

Variant Instance::variant() const {
    if (labelled) return graph.directed() ? Variant::LDTM : Variant::LUTM;
    return graph.directed() ? Variant::UDTM : Variant::UUTM;
}

void Instance::validate() const {
    if (source.size() != target.size())
        throw InputError("source and target hold different token counts");
    if (budget < 0) throw InputError("negative move budget");
    auto check = [&](const Configuration& c, const char* which) {
        auto s = c.sorted();
        for (Vertex v : s)
            if (v < 0 || v >= graph.vertex_count())
                throw InputError(std::string(which) + " vertex out of range: " + std::to_string(v));
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw InputError(std::string(which) + " places two tokens on one vertex");
    };
    check(source, "source");
    check(target, "target");
}

InstanceStats instance_stats(const Instance& inst) {
    InstanceStats st;
    st.k = static_cast<int>(inst.source.size());
    auto s = inst.source.sorted();
    auto t = inst.target.sorted();
    std::set_intersection(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(st.obstacles));
    std::set_difference(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(st.s_only));
    std::set_difference(t.begin(), t.end(), s.begin(), s.end(), std::back_inserter(st.t_only));
    std::set_symmetric_difference(s.begin(), s.end(), t.begin(), t.end(),
                                  std::back_inserter(st.sym_diff));
    std::vector<Vertex> used;
    std::set_union(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(used));
    st.free_count = static_cast<int>(inst.graph.vertex_count() - used.size());
    return st;
}

}  // namespace tokmove
