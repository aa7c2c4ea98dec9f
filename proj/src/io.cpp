#include "tokmove/io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "tokmove/errors.hpp"

namespace tokmove {

namespace {

struct Line {
    int number;
    std::string keyword;
    std::vector<std::string> args;
};

std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        std::istringstream ls(raw);
        Line line{number, "", {}};
        if (!(ls >> line.keyword) || line.keyword[0] == '#') continue;
        std::string tok;
        while (ls >> tok) line.args.push_back(tok);
        out.push_back(std::move(line));
    }
    return out;
}

long long to_int(const Line& line, const std::string& tok) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line.number, "expected an integer, got '" + tok + "'");
    }
}

long long one_int(const Line& line) {
    if (line.args.size() != 1)
        throw ParseError(line.number, line.keyword + " takes exactly one value");
    return to_int(line, line.args[0]);
}

std::pair<long long, long long> two_ints(const Line& line) {
    if (line.args.size() != 2)
        throw ParseError(line.number, line.keyword + " takes exactly two values");
    return {to_int(line, line.args[0]), to_int(line, line.args[1])};
}

std::vector<Vertex> int_list(const Line& line, std::size_t from = 0) {
    std::vector<Vertex> out;
    for (std::size_t i = from; i < line.args.size(); ++i)
        out.push_back(static_cast<Vertex>(to_int(line, line.args[i])));
    return out;
}

[[noreturn]] void unknown(const Line& line) {
    throw ParseError(line.number, "unknown directive '" + line.keyword + "'");
}

}  // namespace

Instance parse_instance(const std::string& text) {
    auto lines = tokenize(text);
    if (lines.empty()) throw ParseError(1, "empty instance file");
    if (lines[0].keyword != "problem" || lines[0].args.size() != 1)
        throw ParseError(lines[0].number, "instance files start with 'problem <variant>'");
    Variant variant;
    try {
        variant = variant_from_name(lines[0].args[0]);
    } catch (const InputError& e) {
        throw ParseError(lines[0].number, e.what());
    }
    if (lines.size() < 2 || lines[1].keyword != "vertices")
        throw ParseError(lines.size() < 2 ? lines[0].number : lines[1].number,
                         "'vertices <n>' must follow the problem line");
    long long n = one_int(lines[1]);
    if (n < 0 || n > 100'000'000) throw ParseError(lines[1].number, "vertex count out of range");

    Graph g(static_cast<Vertex>(n), variant_directed(variant));
    std::vector<Vertex> source, target;
    bool saw_source = false, saw_target = false, saw_budget = false;
    long long budget = 0;
    for (std::size_t i = 2; i < lines.size(); ++i) {
        const Line& line = lines[i];
        try {
            if (line.keyword == "edge") {
                auto [u, v] = two_ints(line);
                if (u < 0 || u >= n || v < 0 || v >= n)
                    throw ParseError(line.number, "edge endpoint out of range");
                if (g.has_edge(static_cast<Vertex>(u), static_cast<Vertex>(v)))
                    throw ParseError(line.number, "duplicate edge");
                g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
            } else if (line.keyword == "source") {
                if (saw_source) throw ParseError(line.number, "repeated source line");
                saw_source = true;
                source = int_list(line);
            } else if (line.keyword == "target") {
                if (saw_target) throw ParseError(line.number, "repeated target line");
                saw_target = true;
                target = int_list(line);
            } else if (line.keyword == "budget") {
                if (saw_budget) throw ParseError(line.number, "repeated budget line");
                saw_budget = true;
                budget = one_int(line);
            } else {
                unknown(line);
            }
        } catch (const ParseError&) {
            throw;
        } catch (const InputError& e) {
            throw ParseError(line.number, e.what());
        }
    }
    if (!saw_source || !saw_target || !saw_budget)
        throw ParseError(lines.back().number, "source, target and budget lines are all required");
    Instance inst{std::move(g), variant_labelled(variant), Configuration(std::move(source)),
                  Configuration(std::move(target)), budget};
    try {
        inst.validate();
    } catch (const InputError& e) {
        throw ParseError(lines.back().number, e.what());
    }
    return inst;
}

std::string serialize_instance(const Instance& inst) {
    std::ostringstream out;
    out << "problem " << variant_name(inst.variant()) << "\n";
    out << "vertices " << inst.graph.vertex_count() << "\n";
    for (auto [u, v] : inst.graph.edges()) out << "edge " << u << " " << v << "\n";
    out << "source";
    for (Vertex v : inst.source.tokens()) out << " " << v;
    out << "\ntarget";
    for (Vertex v : inst.target.tokens()) out << " " << v;
    out << "\nbudget " << inst.budget << "\n";
    return out.str();
}

MoveSequence parse_sequence(const std::string& text) {
    auto lines = tokenize(text);
    if (lines.empty() || lines[0].keyword != "moves")
        throw ParseError(lines.empty() ? 1 : lines[0].number,
                         "sequence files start with 'moves <m>'");
    long long m = one_int(lines[0]);
    if (m < 0 || m + 1 != static_cast<long long>(lines.size()))
        throw ParseError(lines[0].number, "move count does not match the number of move lines");
    MoveSequence seq;
    for (long long i = 1; i <= m; ++i) {
        const Line& line = lines[i];
        if (line.keyword != "move" || line.args.size() < 5)
            throw ParseError(line.number, "expected 'move <label|-> <s> <t> : <path...>'");
        Move mv;
        mv.label = line.args[0] == "-" ? -1 : static_cast<int>(to_int(line, line.args[0]));
        mv.from = static_cast<Vertex>(to_int(line, line.args[1]));
        mv.to = static_cast<Vertex>(to_int(line, line.args[2]));
        if (line.args[3] != ":") throw ParseError(line.number, "expected ':' before the path");
        mv.path = int_list(line, 4);
        if (mv.path.front() != mv.from || mv.path.back() != mv.to)
            throw ParseError(line.number, "path endpoints disagree with the move");
        seq.moves.push_back(std::move(mv));
    }
    return seq;
}

std::string serialize_sequence(const MoveSequence& seq) {
    std::ostringstream out;
    out << "moves " << seq.size() << "\n";
    for (const Move& mv : seq.moves) {
        out << "move ";
        if (mv.label < 0)
            out << "-";
        else
            out << mv.label;
        out << " " << mv.from << " " << mv.to << " :";
        for (Vertex v : mv.path) out << " " << v;
        out << "\n";
    }
    return out.str();
}

RBDSInstance parse_rbds(const std::string& text) {
    RBDSInstance rbds;
    bool saw_blue = false, saw_red = false, saw_k = false;
    for (const Line& line : tokenize(text)) {
        if (line.keyword == "blue") {
            rbds.blue_count = static_cast<int>(one_int(line));
            saw_blue = true;
        } else if (line.keyword == "red") {
            rbds.red_count = static_cast<int>(one_int(line));
            saw_red = true;
        } else if (line.keyword == "edge") {
            auto [b, r] = two_ints(line);
            rbds.edges.push_back({static_cast<int>(b), static_cast<int>(r)});
        } else if (line.keyword == "k") {
            rbds.k = static_cast<int>(one_int(line));
            saw_k = true;
        } else {
            unknown(line);
        }
    }
    if (!saw_blue || !saw_red || !saw_k) throw ParseError(1, "blue, red and k lines are required");
    try {
        rbds.validate();
    } catch (const InputError& e) {
        throw ParseError(1, e.what());
    }
    return rbds;
}

MSIInstance parse_msi(const std::string& text) {
    MSIInstance msi;
    std::vector<std::pair<Vertex, int>> colored;
    std::vector<std::pair<Vertex, Vertex>> gedges, hedges;
    bool saw_colors = false;
    for (const Line& line : tokenize(text)) {
        if (line.keyword == "colors") {
            msi.colors = static_cast<int>(one_int(line));
            saw_colors = true;
        } else if (line.keyword == "gvertex") {
            auto [v, c] = two_ints(line);
            colored.push_back({static_cast<Vertex>(v), static_cast<int>(c)});
        } else if (line.keyword == "gedge") {
            auto [u, v] = two_ints(line);
            gedges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
        } else if (line.keyword == "hedge") {
            auto [i, j] = two_ints(line);
            hedges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j)});
        } else if (line.keyword == "root") {
            msi.root = static_cast<Vertex>(one_int(line));
        } else {
            unknown(line);
        }
    }
    if (!saw_colors) throw ParseError(1, "a colors line is required");
    const int n = static_cast<int>(colored.size());
    msi.color.assign(n, -1);
    for (auto [v, c] : colored) {
        if (v < 0 || v >= n || msi.color[v] != -1)
            throw ParseError(1, "gvertex lines must cover 0..n-1 exactly once");
        msi.color[v] = c;
    }
    try {
        msi.host = Graph(n, false);
        for (auto [u, v] : gedges) msi.host.add_edge(u, v);
        msi.shape = Graph(msi.colors, false);
        for (auto [i, j] : hedges) msi.shape.add_edge(i, j);
        msi.validate();
    } catch (const InputError& e) {
        throw ParseError(1, e.what());
    }
    return msi;
}

std::string serialize_map(const ContractionMap& map) {
    std::ostringstream out;
    for (std::size_t i = 0; i < map.kept.size(); ++i)
        out << "keep " << i << " " << map.kept[i] << "\n";
    for (const auto& [edge, path] : map.shortcuts) {
        out << "shortcut " << edge.first << " " << edge.second << " :";
        for (Vertex v : path) out << " " << v;
        out << "\n";
    }
    return out.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open " + path + " for writing");
    out << text;
    if (!out) throw InputError("write to " + path + " failed");
}

}  // namespace tokmove
