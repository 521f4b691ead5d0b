// Command-line front end: stabilization runs, two-graph distinguishing,
// refinement games, experiment sweeps and aux-graph traces, with JSON (or
// CSV) reports on stdout. Exit code 0 means the run completed; verdicts
// are payload, never exit codes.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "wl/cleanup.hpp"
#include "wl/experiment.hpp"
#include "wl/game.hpp"
#include "wl/generators.hpp"
#include "wl/io.hpp"
#include "wl/refine.hpp"

namespace {

using nlohmann::json;

struct InputOptions {
    std::string family;
    std::size_t n = 8;
    double p = 0.5;
    std::size_t t = 3;
    std::vector<std::size_t> lengths;
    std::uint64_t seed = 0;
    std::string graph6;
    std::string graph6_file;
    std::string edges_file;
    std::string json_file;
};

void add_input_flags(CLI::App* cmd, InputOptions& in, const std::string& suffix = "") {
    auto name = [&suffix](const char* base) { return std::string(base) + suffix; };
    cmd->add_option(name("--family"), in.family,
                    "generator family: path, cycle, disjoint-cycles, gnp, "
                    "bounded-color-class, converse-gap, complete");
    cmd->add_option(name("--n"), in.n, "vertex count for sized families");
    cmd->add_option(name("--p"), in.p, "edge probability for gnp and bounded-color-class");
    cmd->add_option(name("--t"), in.t,
                    "class size for bounded-color-class / block size for converse-gap");
    cmd->add_option(name("--lengths"), in.lengths, "cycle lengths for disjoint-cycles");
    cmd->add_option(name("--seed"), in.seed, "generator seed");
    cmd->add_option(name("--graph6"), in.graph6, "inline graph6 string");
    cmd->add_option(name("--graph6-file"), in.graph6_file, "file with one graph6 string");
    cmd->add_option(name("--edges"), in.edges_file,
                    "edge list file (u v lines, optional v/n lines)");
    cmd->add_option(name("--json"), in.json_file, "colored graph JSON file {n, colors}");
}

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

wl::ColoredGraph load_graph(const InputOptions& in, std::string& source) {
    int provided = static_cast<int>(!in.family.empty()) + static_cast<int>(!in.graph6.empty()) +
                   static_cast<int>(!in.graph6_file.empty()) +
                   static_cast<int>(!in.edges_file.empty()) +
                   static_cast<int>(!in.json_file.empty());
    if (provided != 1) {
        throw std::runtime_error(
            "exactly one input among --family/--graph6/--graph6-file/--edges/--json is required");
    }
    if (!in.family.empty()) {
        auto fam = wl::family_from_string(in.family);
        if (!fam) throw std::runtime_error("unknown family: " + in.family);
        wl::FamilySpec spec{*fam, in.n, in.p, in.t, in.lengths, in.seed};
        source = spec.describe();
        return wl::generate(spec);
    }
    if (!in.graph6.empty()) {
        source = "graph6";
        return wl::parse_graph6(in.graph6);
    }
    if (!in.graph6_file.empty()) {
        source = in.graph6_file;
        return wl::parse_graph6(read_file(in.graph6_file));
    }
    if (!in.edges_file.empty()) {
        source = in.edges_file;
        return wl::parse_edge_list(read_file(in.edges_file));
    }
    source = in.json_file;
    return wl::graph_from_json(json::parse(read_file(in.json_file)));
}

wl::ExperimentMode parse_mode(const std::string& name) {
    if (name == "wl1") return {.wl1 = true, .variant = wl::RefinementVariant::Counting};
    auto v = wl::variant_from_string(name);
    if (!v) throw std::runtime_error("unknown variant: " + name);
    return {.wl1 = false, .variant = *v};
}

std::string output_dir() {
    const char* env = std::getenv("WL_OUTPUT_DIR");
    return env ? env : ".";
}

std::optional<std::size_t> bounded_t_of(const InputOptions& in) {
    if (in.family == "bounded-color-class" || in.family == "bounded_color_class") return in.t;
    return std::nullopt;
}

int cmd_stabilize(const InputOptions& in, const std::string& variant, bool csv,
                  const std::string& emit_stable) {
    std::string source;
    wl::ColoredGraph g = load_graph(in, source);
    wl::ExperimentMode mode = parse_mode(variant);
    wl::ExperimentRecord rec = measure(g, mode, source, in.family.empty() ? "file" : in.family,
                                       in.seed, bounded_t_of(in));
    if (rec.error) throw std::runtime_error(*rec.error);
    if (!emit_stable.empty()) {
        auto stable = wl::stabilize(g, mode.wl1 ? wl::RefinementVariant::Counting : mode.variant);
        std::ofstream out(emit_stable);
        if (!out) throw std::runtime_error("cannot write " + emit_stable);
        out << wl::graph_to_json(stable.stable_graph).dump(2) << '\n';
    }
    if (csv) {
        std::cout << wl::csv_header() << '\n' << wl::to_csv_row(rec) << '\n';
    } else {
        std::cout << wl::to_json(rec).dump(2) << '\n';
    }
    return 0;
}

int cmd_distinguish(const InputOptions& a, const InputOptions& b, const std::string& variant) {
    std::string sa, sb;
    wl::ColoredGraph ga = load_graph(a, sa);
    wl::ColoredGraph gb = load_graph(b, sb);
    wl::DistinguishVerdict verdict;
    if (variant == "wl1") {
        verdict = wl::distinguish_wl1(ga, gb);
    } else {
        auto v = wl::variant_from_string(variant);
        if (!v) throw std::runtime_error("unknown variant: " + variant);
        verdict = wl::distinguish(ga, gb, *v);
    }
    json j{{"distinguished", verdict.distinguished},
           {"iterations_used", verdict.iterations_used},
           {"a", sa},
           {"b", sb},
           {"variant", variant}};
    j["witness_color"] = verdict.witness_color ? json(*verdict.witness_color) : json(nullptr);
    std::cout << j.dump(2) << '\n';
    return 0;
}

int cmd_game(const InputOptions& in, const std::string& p1, const std::string& p2,
             std::uint64_t seed, double threshold, const std::string& out_path) {
    std::string source;
    wl::ColoredGraph g = load_graph(in, source);
    auto p1k = wl::p1_from_string(p1);
    auto p2k = wl::p2_from_string(p2);
    if (!p1k) throw std::runtime_error("unknown Player 1 strategy: " + p1);
    if (!p2k) throw std::runtime_error("unknown Player 2 strategy: " + p2);
    wl::GameConfig cfg;
    if (threshold > 0) cfg.threshold = wl::ThresholdConfig::fixed(threshold);
    wl::GameTranscript t = wl::run_game(g, *p1k, *p2k, seed, cfg);

    std::string path = out_path;
    if (path.empty()) {
        path = output_dir() + "/transcript-" + std::to_string(seed) + ".json";
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << wl::transcript_to_json(t).dump(2) << '\n';

    json summary{{"total_cost", t.total_cost},
                 {"wl_iterations", t.iterations_equivalent},
                 {"vertex_splits", t.vertex_splits},
                 {"moves", t.moves.size()},
                 {"transcript", path}};
    std::cout << summary.dump(2) << '\n';
    return 0;
}

int cmd_sweep(const std::string& family, const std::vector<std::size_t>& sizes, double p,
              std::size_t t, std::size_t reps, std::uint64_t seed, const std::string& variant,
              bool csv) {
    auto fam = wl::family_from_string(family);
    if (!fam) throw std::runtime_error("unknown family: " + family);
    auto records = wl::sweep(*fam, sizes, p, t, reps, seed, parse_mode(variant));
    if (csv) {
        std::cout << wl::csv_header() << '\n';
        for (const auto& r : records) std::cout << wl::to_csv_row(r) << '\n';
    } else {
        json arr = json::array();
        for (const auto& r : records) arr.push_back(wl::to_json(r));
        json agg = json::array();
        for (const auto& a : wl::aggregate(records)) {
            agg.push_back({{"n", a.n},
                           {"instances", a.instances},
                           {"max_iterations", a.max_iterations},
                           {"mean_iterations", a.mean_iterations},
                           {"max_ratio_iter_log_n2", a.max_ratio_log}});
        }
        std::cout << json{{"records", arr}, {"aggregates", agg}}.dump(2) << '\n';
    }
    return 0;
}

int cmd_aux_trace(const InputOptions& in, double threshold, const std::string& variant) {
    std::string source;
    wl::ColoredGraph g = load_graph(in, source);
    wl::GameConfig cfg;
    if (threshold > 0) cfg.threshold = wl::ThresholdConfig::fixed(threshold);
    auto v = wl::variant_from_string(variant);
    if (!v) throw std::runtime_error("unknown variant: " + variant);
    cfg.variant = *v;
    wl::AuxTraceResult res = wl::run_aux_loop(g, cfg);
    json steps = json::array();
    bool containment_ok = true;
    for (const auto& s : res.steps) {
        steps.push_back({{"aux", wl::aux_to_json(s.aux)},
                         {"stable", s.stable},
                         {"containment_checked", s.containment_checked},
                         {"containment_holds", s.containment_holds}});
        if (s.containment_checked && !s.containment_holds) containment_ok = false;
    }
    json j{{"source", source},
           {"steps", steps},
           {"refinement_iterations", res.refinement_iterations},
           {"cleanup_steps", res.cleanup_steps},
           {"containment_ok", containment_ok}};
    std::cout << j.dump(2) << '\n';
    if (!containment_ok) {
        std::cerr << "aux trace: containment check failed\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pair-refinement toolkit: stabilization, games, experiments"};
    app.require_subcommand(1);

    InputOptions in, in_b;
    std::string variant = "counting";
    bool csv = false;
    std::string emit_stable, p1 = "wl-step", p2 = "stabilize", out_path;
    std::uint64_t game_seed = 0;
    double threshold = 0.0;
    std::string sweep_family = "path";
    std::vector<std::size_t> sizes{8, 16, 32, 64};
    std::size_t reps = 1;
    double sweep_p = 0.5;
    std::size_t sweep_t = 3;
    std::uint64_t sweep_seed = 1;

    auto* stab = app.add_subcommand("stabilize", "refine an input to its stable partition");
    add_input_flags(stab, in);
    stab->add_option("--variant", variant, "counting | converse-aware | set | wl1");
    stab->add_flag("--csv", csv, "emit a CSV row instead of JSON");
    stab->add_option("--emit-stable", emit_stable, "write the stable graph JSON to this path");

    auto* dist = app.add_subcommand("distinguish", "compare two inputs by stable color counts");
    add_input_flags(dist, in);
    add_input_flags(dist, in_b, "-b");
    dist->add_option("--variant", variant, "counting | converse-aware | set | wl1");

    auto* game = app.add_subcommand("game", "run the two-player refinement game");
    add_input_flags(game, in);
    game->add_option("--p1", p1, "wl-step | random-split");
    game->add_option("--p2", p2, "stabilize | aux-guided");
    game->add_option("--game-seed", game_seed, "seed for the strategy RNG");
    game->add_option("--threshold", threshold,
                     "fixed small/large threshold (default log2(n)/2)");
    game->add_option("--out", out_path, "transcript path (default $WL_OUTPUT_DIR)");

    auto* sweep_cmd = app.add_subcommand("sweep", "per-size stabilization measurements");
    sweep_cmd->add_option("--family", sweep_family, "family to sweep");
    sweep_cmd->add_option("--sizes", sizes, "vertex counts");
    sweep_cmd->add_option("--p", sweep_p, "edge probability");
    sweep_cmd->add_option("--t", sweep_t, "class size bound");
    sweep_cmd->add_option("--reps", reps, "instances per size");
    sweep_cmd->add_option("--seed", sweep_seed, "base seed");
    sweep_cmd->add_option("--variant", variant, "counting | converse-aware | set | wl1");
    sweep_cmd->add_flag("--csv", csv, "emit CSV rows");

    auto* aux = app.add_subcommand("aux-trace", "trace the aux-guided refinement loop");
    add_input_flags(aux, in);
    aux->add_option("--threshold", threshold, "fixed small/large threshold");
    aux->add_option("--variant", variant, "counting | converse-aware | set");

    CLI11_PARSE(app, argc, argv);

    try {
        if (stab->parsed()) return cmd_stabilize(in, variant, csv, emit_stable);
        if (dist->parsed()) return cmd_distinguish(in, in_b, variant);
        if (game->parsed()) return cmd_game(in, p1, p2, game_seed, threshold, out_path);
        if (sweep_cmd->parsed())
            return cmd_sweep(sweep_family, sizes, sweep_p, sweep_t, reps, sweep_seed, variant,
                             csv);
        if (aux->parsed()) return cmd_aux_trace(in, threshold, variant);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
