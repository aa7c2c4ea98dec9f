#include "tokmove/gridgen.hpp"

#include <algorithm>
#include <string>

#include "tokmove/errors.hpp"
#include "tokmove/rng.hpp"

namespace tokmove {

Instance gen_grid(const GridSpec& spec) {
    if (spec.rows <= 0 || spec.cols <= 0) throw InputError("grid dimensions must be positive");
    if (spec.fill_probability < 0.0 || spec.fill_probability > 1.0)
        throw InputError("fill probability must lie in [0,1]");
    const long long cells = static_cast<long long>(spec.rows) * spec.cols;
    if (cells > 10'000'000) throw InputError("grid too large");

    const int rows = spec.rows, cols = spec.cols;
    Graph g(static_cast<Vertex>(cells), false);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            Vertex v = r * cols + c;
            if (c + 1 < cols) g.add_edge(v, v + 1);
            if (r + 1 < rows) g.add_edge(v, v + cols);
        }

    SplitMix64 rng(spec.seed);
    std::vector<Vertex> source;
    for (Vertex v = 0; v < cells; ++v)
        if (rng.unit() < spec.fill_probability) source.push_back(v);
    const int k = static_cast<int>(source.size());

    std::vector<Vertex> target;
    switch (spec.shape) {
        case GridSpec::Shape::Block: {
            int band = (k + cols - 1) / cols;
            int off = (rows - band) / 2;
            for (Vertex v = off * cols; static_cast<int>(target.size()) < k; ++v)
                target.push_back(v);
            break;
        }
        case GridSpec::Shape::Rows:
            for (Vertex v = 0; v < k; ++v) target.push_back(v);
            break;
        case GridSpec::Shape::Custom:
            if (static_cast<int>(spec.custom.size()) != k)
                throw ConstructionError("custom target holds " +
                                        std::to_string(spec.custom.size()) + " sites but " +
                                        std::to_string(k) + " tokens were loaded");
            target = spec.custom;
            break;
    }

    Instance inst{std::move(g), spec.labelled, Configuration(std::move(source)),
                  Configuration(std::move(target)), 0};
    if (spec.budget_override >= 0) {
        inst.budget = spec.budget_override;
    } else {
        InstanceStats st = instance_stats(inst);
        inst.budget = static_cast<long long>(st.sym_diff.size() + st.obstacles.size());
    }
    inst.validate();
    return inst;
}

}  // namespace tokmove
