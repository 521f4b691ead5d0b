#include "wl/experiment.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

namespace wl {

ExperimentRecord measure(const ColoredGraph& g, const ExperimentMode& mode,
                         const std::string& source, const std::string& family,
                         std::uint64_t seed, std::optional<std::size_t> bounded_t) {
    ExperimentRecord rec;
    rec.source = source;
    rec.family = family;
    rec.variant = mode.name();
    rec.n = g.size();
    rec.seed = seed;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        if (mode.wl1) {
            Wl1Result r = wl1_stabilize(g);
            rec.iterations = r.iterations;
            rec.vertex_classes_final = r.class_count;
            rec.edge_classes_final = 0;
        } else {
            StabilizationResult r = stabilize(g, mode.variant);
            rec.iterations = r.iterations;
            rec.vertex_classes_final = r.stable_graph.vertex_class_count();
            rec.edge_classes_final = r.stable_graph.edge_class_count();
        }
    } catch (const std::exception& e) {
        rec.error = e.what();
    }
    const auto t1 = std::chrono::steady_clock::now();
    rec.wall_time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    if (rec.n >= 2) {
        rec.ratio_iterations_log =
            rec.iterations * std::log2(static_cast<double>(rec.n)) /
            (static_cast<double>(rec.n) * static_cast<double>(rec.n));
    }
    if (bounded_t) {
        rec.ratio_iterations_2t = rec.iterations /
                                  (std::pow(2.0, static_cast<double>(*bounded_t)) *
                                   static_cast<double>(rec.n));
    }
    return rec;
}

std::vector<ExperimentRecord> sweep(Family family, const std::vector<std::size_t>& sizes,
                                    double p, std::size_t t, std::size_t repetitions,
                                    std::uint64_t base_seed, const ExperimentMode& mode) {
    std::vector<ExperimentRecord> out;
    for (std::size_t n : sizes) {
        for (std::size_t rep = 0; rep < repetitions; ++rep) {
            FamilySpec spec;
            spec.family = family;
            spec.n = n;
            spec.p = p;
            spec.t = t;
            spec.seed = base_seed + rep;
            if (family == Family::DisjointCycles) {
                spec.lengths = {n / 2, n - n / 2};  // two cycles when n allows
            }
            std::optional<std::size_t> bounded;
            if (family == Family::BoundedColorClass) bounded = t;
            try {
                ColoredGraph g = generate(spec);
                out.push_back(measure(g, mode, spec.describe(), to_string(family), spec.seed,
                                      bounded));
            } catch (const std::exception& e) {
                ExperimentRecord rec;
                rec.source = spec.describe();
                rec.family = to_string(family);
                rec.variant = mode.name();
                rec.n = n;
                rec.seed = spec.seed;
                rec.error = e.what();
                out.push_back(std::move(rec));
            }
        }
    }
    return out;
}

std::string csv_header() {
    return "n,family,seed,variant,iterations,vertex_classes_final,edge_classes_final,"
           "ratio_iter_log_n2,ratio_iter_2t_n,wall_time_ms,error";
}

std::string to_csv_row(const ExperimentRecord& r) {
    std::ostringstream os;
    os << r.n << ',' << r.family << ',' << r.seed << ',' << r.variant << ',' << r.iterations
       << ',' << r.vertex_classes_final << ',' << r.edge_classes_final << ','
       << r.ratio_iterations_log << ',';
    if (r.ratio_iterations_2t) os << *r.ratio_iterations_2t;
    os << ',' << r.wall_time_ms << ',';
    if (r.error) {
        std::string e = *r.error;
        for (auto& c : e)
            if (c == ',' || c == '\n') c = ';';
        os << e;
    }
    return os.str();
}

nlohmann::json to_json(const ExperimentRecord& r) {
    nlohmann::json j{{"source", r.source},
                     {"family", r.family},
                     {"variant", r.variant},
                     {"n", r.n},
                     {"seed", r.seed},
                     {"iterations", r.iterations},
                     {"vertex_classes_final", r.vertex_classes_final},
                     {"edge_classes_final", r.edge_classes_final},
                     {"wall_time_ms", r.wall_time_ms},
                     {"bound_ratios", {{"iterations_log2n_over_n2", r.ratio_iterations_log}}}};
    if (r.ratio_iterations_2t) {
        j["bound_ratios"]["iterations_over_2t_n"] = *r.ratio_iterations_2t;
    }
    if (r.error) j["error"] = *r.error;
    return j;
}

std::vector<SweepAggregate> aggregate(const std::vector<ExperimentRecord>& records) {
    std::map<std::size_t, SweepAggregate> by_n;
    for (const auto& r : records) {
        if (r.error) continue;
        auto& a = by_n[r.n];
        a.n = r.n;
        a.instances += 1;
        a.max_iterations = std::max(a.max_iterations, r.iterations);
        a.mean_iterations += r.iterations;
        a.max_ratio_log = std::max(a.max_ratio_log, r.ratio_iterations_log);
    }
    std::vector<SweepAggregate> out;
    for (auto& [n, a] : by_n) {
        if (a.instances) a.mean_iterations /= static_cast<double>(a.instances);
        out.push_back(a);
    }
    return out;
}

}  // namespace wl
