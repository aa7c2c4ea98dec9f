#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "tokmove/errors.hpp"
#include "tokmove/gridgen.hpp"
#include "tokmove/io.hpp"
#include "tokmove/oracle.hpp"
#include "tokmove/report.hpp"
#include "tokmove/solver_directed.hpp"
#include "tokmove/solver_unlabelled.hpp"
#include "tokmove/transforms.hpp"

namespace {

using namespace tokmove;

// exit codes: 0 yes/valid, 1 no/invalid, 2 unknown/refused, 3 usage or bad input
constexpr int kYes = 0, kNo = 1, kRefused = 2, kUsage = 3;

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

void write_report(const RunReport& rep, const std::string& dest) {
    if (dest.empty()) return;
    if (dest == "-")
        std::cout << rep.to_json();
    else
        write_text_file(dest, rep.to_json());
}

void emit_sequence(const MoveSequence& seq, const std::string& dest) {
    if (dest.empty()) return;
    if (dest == "-")
        std::cout << serialize_sequence(seq);
    else
        write_text_file(dest, serialize_sequence(seq));
}

struct SolveFlags {
    std::string instance_path, sequence_out, report_out;
    std::string method = "auto";
    std::string engine = "gadget";
    int exact_threshold = 15;
    int threads = 1;
    std::uint64_t seed = DirectedSolveOptions{}.seed;
    std::uint64_t cap = 10'000'000;
    double failure_bound = 1e-3;
};

void add_solve_flags(CLI::App* cmd, SolveFlags& f, bool with_report = true) {
    cmd->add_option("instance", f.instance_path, "instance file")->required();
    cmd->add_option("--emit-sequence", f.sequence_out, "write the witness sequence here ('-' = stdout)");
    if (with_report)
        cmd->add_option("--report", f.report_out, "write a JSON run report here ('-' = stdout)");
    cmd->add_option("--method", f.method,
                    "auto, ell (budget-split search), k (token-count search) or oracle")
        ->check(CLI::IsMember({"auto", "ell", "k", "oracle"}));
    cmd->add_option("--engine", f.engine, "embedding engine: gadget or direct")
        ->check(CLI::IsMember({"gadget", "direct"}));
    cmd->add_option("--exact-threshold", f.exact_threshold,
                    "host size at or below which embedding is exhaustive");
    cmd->add_option("--threads", f.threads, "worker threads for randomized searches");
    cmd->add_option("--seed", f.seed, "seed for randomized searches");
    cmd->add_option("--cap", f.cap, "state cap for exact searches");
    cmd->add_option("--delta", f.failure_bound,
                    "allowed one-sided error of the randomized embedding search");
}

int run_solve(const SolveFlags& f, const std::string& forced_report) {
    auto t0 = std::chrono::steady_clock::now();
    Instance inst = parse_instance(read_text_file(f.instance_path));
    RunReport rep;
    rep.describe(inst);
    std::string report_dest = forced_report.empty() ? f.report_out : forced_report;

    SolveResult res;
    try {
        std::string method = f.method;
        if (method == "auto") {
            if (inst.variant() == Variant::UUTM)
                method = "ell";
            else if (inst.variant() == Variant::UDTM)
                method = "forest";
            else {
                std::cerr << "note: labelled variant, falling back to the exhaustive oracle\n";
                method = "oracle";
            }
        }
        if (method == "ell") {
            res = solve_uutm(inst);
        } else if (method == "k") {
            res = solve_by_k(inst);
        } else if (method == "forest") {
            DirectedSolveOptions opts;
            opts.engine = f.engine == "direct" ? DirectedSolveOptions::Engine::Direct
                                               : DirectedSolveOptions::Engine::Gadget;
            opts.exact_threshold = f.exact_threshold;
            opts.threads = f.threads;
            opts.seed = f.seed;
            opts.oracle_cap = f.cap;
            opts.failure_bound = f.failure_bound;
            res = solve_udtm(inst, opts);
        } else {
            OracleOptions opts;
            opts.cap = f.cap;
            opts.witness = true;
            OracleResult ores = shortest_transforming_sequence(inst, opts);
            res.method = "oracle";
            res.yes = ores.reachable &&
                      static_cast<long long>(*ores.shortest) <= inst.budget;
            if (res.yes) res.sequence = std::move(ores.witness);
        }
    } catch (const CapExceededError& e) {
        rep.decision = "unknown";
        rep.reason = e.what();
        rep.wall_ms = ms_since(t0);
        write_report(rep, report_dest);
        std::cerr << "refused: " << e.what() << "\n";
        return kRefused;
    }

    rep.decision = res.yes ? "yes" : "no";
    rep.method = res.method;
    if (res.sequence) rep.sequence_length = static_cast<long long>(res.sequence->size());
    rep.wall_ms = ms_since(t0);
    write_report(rep, report_dest);
    if (res.yes && res.sequence) emit_sequence(*res.sequence, f.sequence_out);
    std::cout << (res.yes ? "yes" : "no") << "\n";
    return res.yes ? kYes : kNo;
}

int run_oracle(const SolveFlags& f, bool move_once) {
    auto t0 = std::chrono::steady_clock::now();
    Instance inst = parse_instance(read_text_file(f.instance_path));
    RunReport rep;
    rep.describe(inst);
    OracleOptions opts;
    opts.cap = f.cap;
    opts.witness = !f.sequence_out.empty();
    rep.method = move_once ? "oracle-move-once" : "oracle";
    OracleResult res;
    try {
        res = move_once ? shortest_move_once(inst, opts)
                        : shortest_transforming_sequence(inst, opts);
    } catch (const CapExceededError& e) {
        rep.decision = "unknown";
        rep.reason = e.what();
        rep.wall_ms = ms_since(t0);
        write_report(rep, f.report_out);
        std::cerr << "refused: " << e.what() << "\n";
        return kRefused;
    }
    bool yes = res.reachable && static_cast<long long>(*res.shortest) <= inst.budget;
    rep.decision = yes ? "yes" : "no";
    if (res.shortest) rep.sequence_length = static_cast<long long>(*res.shortest);
    rep.wall_ms = ms_since(t0);
    write_report(rep, f.report_out);
    if (res.reachable)
        std::cout << (yes ? "yes" : "no") << " shortest " << *res.shortest << "\n";
    else
        std::cout << "no unreachable\n";
    if (yes && res.witness) emit_sequence(*res.witness, f.sequence_out);
    return yes ? kYes : kNo;
}

void write_map_file(const std::vector<Vertex>& new_to_old, const std::string& dest) {
    if (dest.empty()) return;
    std::string out;
    for (std::size_t i = 0; i < new_to_old.size(); ++i)
        out += "keep " + std::to_string(i) + " " + std::to_string(new_to_old[i]) + "\n";
    write_text_file(dest, out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"token rearrangement toolkit: solvers, oracle, verifier, instance factories"};
    app.require_subcommand(1);

    SolveFlags solve_f, oracle_f, report_f;
    bool oracle_move_once = false;
    auto* solve_cmd = app.add_subcommand("solve", "decide an instance, optionally emitting a witness");
    add_solve_flags(solve_cmd, solve_f);
    auto* oracle_cmd = app.add_subcommand("oracle", "exact shortest sequence by exhaustive search");
    oracle_cmd->add_option("instance", oracle_f.instance_path, "instance file")->required();
    oracle_cmd->add_option("--emit-sequence", oracle_f.sequence_out, "write a shortest sequence here");
    oracle_cmd->add_option("--report", oracle_f.report_out, "write a JSON run report here");
    oracle_cmd->add_option("--cap", oracle_f.cap, "refuse when the state space can exceed this");
    oracle_cmd->add_flag("--move-once", oracle_move_once, "restrict to sequences moving no token twice");
    auto* report_cmd = app.add_subcommand("report", "solve and print the JSON run report");
    add_solve_flags(report_cmd, report_f, false);

    std::string verify_instance, verify_sequence;
    bool verify_lenient = false;
    auto* verify_cmd = app.add_subcommand("verify", "replay a sequence file against an instance");
    verify_cmd->add_option("instance", verify_instance)->required();
    verify_cmd->add_option("sequence", verify_sequence)->required();
    verify_cmd->add_flag("--lenient", verify_lenient, "re-derive paths instead of checking recorded ones");

    std::string tr_in, tr_out, tr_map;
    int subdivide_times = 1;
    auto* kern_cmd = app.add_subcommand("kernelize", "contract to the token-closure kernel");
    kern_cmd->add_option("instance", tr_in)->required();
    kern_cmd->add_option("-o,--out", tr_out)->required();
    kern_cmd->add_option("--map", tr_map, "write the keep/shortcut correspondence here");
    auto* prune_cmd = app.add_subcommand("prune", "drop provably idle obstacles (directed, contracted)");
    prune_cmd->add_option("instance", tr_in)->required();
    prune_cmd->add_option("-o,--out", tr_out)->required();
    prune_cmd->add_option("--map", tr_map);
    auto* transform_cmd = app.add_subcommand("transform", "degree or edge-length rewrites");
    transform_cmd->require_subcommand(1);
    auto* deg3_cmd = transform_cmd->add_subcommand("degree3", "bound total degree by three");
    deg3_cmd->add_option("instance", tr_in)->required();
    deg3_cmd->add_option("-o,--out", tr_out)->required();
    deg3_cmd->add_option("--map", tr_map);
    auto* subdiv_cmd = transform_cmd->add_subcommand("subdivide", "subdivide every edge");
    subdiv_cmd->add_option("instance", tr_in)->required();
    subdiv_cmd->add_option("-o,--out", tr_out)->required();
    subdiv_cmd->add_option("--times", subdivide_times, "internal vertices per edge")->required();
    subdiv_cmd->add_option("--map", tr_map);

    std::string red_in, red_out, red_variant = "UUTM", red_cert;
    long long red_cap = 1'000'000;
    std::vector<int> red_planted;
    auto* reduce_cmd = app.add_subcommand("reduce", "build hard instances from covering problems");
    reduce_cmd->require_subcommand(1);
    auto* rbds_cmd = reduce_cmd->add_subcommand("rbds", "domination-to-rearrangement broom");
    rbds_cmd->add_option("input", red_in)->required();
    rbds_cmd->add_option("-o,--out", red_out)->required();
    rbds_cmd->add_option("--variant", red_variant)
        ->check(CLI::IsMember({"UUTM", "UDTM", "LUTM", "LDTM"}));
    auto* msid_cmd = reduce_cmd->add_subcommand("msi-dir", "colourful-copy search, directed output");
    msid_cmd->add_option("input", red_in)->required();
    msid_cmd->add_option("-o,--out", red_out)->required();
    msid_cmd->add_option("--planted", red_planted, "planted copy, one vertex per colour")
        ->delimiter(',');
    msid_cmd->add_option("--certificate", red_cert, "write the planted-copy witness sequence here");
    auto* msiu_cmd = reduce_cmd->add_subcommand("msi-undir", "colourful-copy search, undirected clock output");
    msiu_cmd->add_option("input", red_in)->required();
    msiu_cmd->add_option("-o,--out", red_out)->required();
    msiu_cmd->add_option("--cap", red_cap, "refuse builds above this many vertices");
    msiu_cmd->add_option("--planted", red_planted, "planted copy, one vertex per colour")
        ->delimiter(',');
    msiu_cmd->add_option("--certificate", red_cert, "write the planted-copy witness sequence here");

    GridSpec grid;
    std::string grid_out, grid_shape = "block";
    long long grid_budget = -1;
    auto* gen_cmd = app.add_subcommand("gen", "instance generators");
    gen_cmd->require_subcommand(1);
    auto* grid_cmd = gen_cmd->add_subcommand("grid", "seeded 4-neighbour grid instance");
    grid_cmd->add_option("--rows", grid.rows)->required();
    grid_cmd->add_option("--cols", grid.cols)->required();
    grid_cmd->add_option("--fill", grid.fill_probability, "per-site load probability");
    grid_cmd->add_option("--seed", grid.seed);
    grid_cmd->add_option("--target", grid_shape, "target shape: block, rows or custom")
        ->check(CLI::IsMember({"block", "rows", "custom"}));
    grid_cmd->add_option("--custom", grid.custom, "explicit target sites")->delimiter(',');
    grid_cmd->add_flag("--labelled", grid.labelled, "pair tokens with targets in row-major order");
    grid_cmd->add_option("--budget", grid_budget, "override the default move budget");
    grid_cmd->add_option("-o,--out", grid_out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        if (*solve_cmd) return run_solve(solve_f, "");
        if (*report_cmd) return run_solve(report_f, "-");
        if (*oracle_cmd) return run_oracle(oracle_f, oracle_move_once);

        if (*verify_cmd) {
            Instance inst = parse_instance(read_text_file(verify_instance));
            MoveSequence seq = parse_sequence(read_text_file(verify_sequence));
            Verdict v = validate_sequence(inst, seq,
                                          verify_lenient ? PathCheck::Lenient : PathCheck::Strict);
            switch (v.kind) {
                case Verdict::ValidReachesTarget:
                    std::cout << "valid " << seq.size() << " moves, reaches the target\n";
                    return kYes;
                case Verdict::ValidWrongFinal:
                    std::cout << "valid but ends away from the target\n";
                    return kNo;
                default:
                    std::cout << "invalid at move " << v.index << ": " << v.reason << "\n";
                    return kNo;
            }
        }

        if (*kern_cmd) {
            Instance inst = parse_instance(read_text_file(tr_in));
            auto [kernel, map] = contract(inst);
            write_text_file(tr_out, serialize_instance(kernel));
            if (!tr_map.empty()) write_text_file(tr_map, serialize_map(map));
            std::cout << "kernel " << kernel.graph.vertex_count() << " vertices\n";
            return kYes;
        }
        if (*prune_cmd || *deg3_cmd || *subdiv_cmd) {
            Instance inst = parse_instance(read_text_file(tr_in));
            TransformResult res = *prune_cmd   ? prune_obstacles(inst)
                                  : *deg3_cmd ? to_max_degree_three(inst)
                                              : subdivide(inst, subdivide_times);
            write_text_file(tr_out, serialize_instance(res.instance));
            write_map_file(res.new_to_old, tr_map);
            std::cout << res.name << " " << res.instance.graph.vertex_count() << " vertices\n";
            return kYes;
        }

        if (*rbds_cmd) {
            RBDSInstance rbds = parse_rbds(read_text_file(red_in));
            Instance inst = reduce_rbds(rbds, variant_from_name(red_variant));
            write_text_file(red_out, serialize_instance(inst));
            std::cout << "reduced " << inst.graph.vertex_count() << " vertices, budget "
                      << inst.budget << "\n";
            return kYes;
        }
        if (*msid_cmd || *msiu_cmd) {
            MSIInstance msi = parse_msi(read_text_file(red_in));
            std::vector<Vertex> planted(red_planted.begin(), red_planted.end());
            Instance inst = *msid_cmd ? reduce_msi_directed(msi)
                                      : reduce_msi_undirected(msi, red_cap).instance;
            write_text_file(red_out, serialize_instance(inst));
            if (!red_cert.empty()) {
                if (planted.empty()) throw InputError("--certificate needs --planted");
                if (*msid_cmd) {
                    write_text_file(red_cert, serialize_sequence(forward_sequence_directed(msi, planted)));
                } else {
                    // stream move by move; materialising the clock sequence would not fit
                    std::ofstream cert(red_cert, std::ios::binary);
                    if (!cert) throw InputError("cannot open " + red_cert + " for writing");
                    cert << "moves " << inst.budget << "\n";
                    struct FileSink : MoveSink {
                        std::ofstream& out;
                        explicit FileSink(std::ofstream& o) : out(o) {}
                        bool consume(const Move& mv) override {
                            out << "move " << mv.label << " " << mv.from << " " << mv.to << " :";
                            for (Vertex v : mv.path) out << " " << v;
                            out << "\n";
                            return static_cast<bool>(out);
                        }
                    } sink(cert);
                    forward_sequence_undirected(msi, planted, {}, sink, red_cap);
                    if (!cert) throw InputError("write to " + red_cert + " failed");
                }
            }
            std::cout << "reduced " << inst.graph.vertex_count() << " vertices, budget "
                      << inst.budget << "\n";
            return kYes;
        }

        if (*grid_cmd) {
            if (grid_shape == "rows") grid.shape = GridSpec::Shape::Rows;
            if (grid_shape == "custom") grid.shape = GridSpec::Shape::Custom;
            grid.budget_override = grid_budget;
            Instance inst = gen_grid(grid);
            write_text_file(grid_out, serialize_instance(inst));
            std::cout << "grid " << inst.graph.vertex_count() << " vertices, "
                      << inst.source.size() << " tokens\n";
            return kYes;
        }
    } catch (const CapExceededError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return kRefused;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
