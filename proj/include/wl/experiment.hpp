#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wl/colored_graph.hpp"
#include "wl/generators.hpp"
#include "wl/refine.hpp"

#include "json.hpp"

namespace wl {

/// Refinement mode of a measurement run; Wl1 measures 1-dimensional color
/// refinement instead of a pair-refinement variant.
struct ExperimentMode {
    bool wl1 = false;
    RefinementVariant variant = RefinementVariant::Counting;
    std::string name() const { return wl1 ? "wl1" : to_string(variant); }
};

struct ExperimentRecord {
    std::string source;  // family spec or input file reference
    std::string family;
    std::string variant;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    int iterations = 0;
    std::size_t vertex_classes_final = 0;
    std::size_t edge_classes_final = 0;
    double wall_time_ms = 0.0;
    double ratio_iterations_log = 0.0;           // iterations * log2(n) / n^2
    std::optional<double> ratio_iterations_2t;   // iterations / (2^t * n), class-bounded runs
    std::optional<std::string> error;            // per-instance failure, recorded and skipped
};

/// Stabilizes the graph under the mode and measures it. `bounded_t` turns
/// on the class-size-bound ratio column.
ExperimentRecord measure(const ColoredGraph& g, const ExperimentMode& mode,
                         const std::string& source, const std::string& family,
                         std::uint64_t seed, std::optional<std::size_t> bounded_t);

/// One record per (n, repetition); failures are captured in the record.
std::vector<ExperimentRecord> sweep(Family family, const std::vector<std::size_t>& sizes,
                                    double p, std::size_t t, std::size_t repetitions,
                                    std::uint64_t base_seed, const ExperimentMode& mode);

/// Fixed CSV column order:
/// n,family,seed,variant,iterations,vertex_classes_final,edge_classes_final,
/// ratio_iter_log_n2,ratio_iter_2t_n,wall_time_ms,error
std::string csv_header();
std::string to_csv_row(const ExperimentRecord& r);
nlohmann::json to_json(const ExperimentRecord& r);

struct SweepAggregate {
    std::size_t n = 0;
    std::size_t instances = 0;
    int max_iterations = 0;
    double mean_iterations = 0.0;
    double max_ratio_log = 0.0;
};

std::vector<SweepAggregate> aggregate(const std::vector<ExperimentRecord>& records);

}  // namespace wl
