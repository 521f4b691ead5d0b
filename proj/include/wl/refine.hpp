#pragma once

#include <optional>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "wl/colored_graph.hpp"

namespace wl {

/// The pair-refinement operator in use.
///  - Counting: signature is (old color, multiset over w of
///    (chi(w,v2), chi(v1,w))); requires converse-equivalent input.
///  - ConverseAware: the multiset entries are the 4-tuples
///    (chi(w,v2), chi(v2,w), chi(v1,w), chi(w,v1)); accepts any valid
///    coloring and restores converse equivalence after one step.
///  - SetBased: the Counting multiset collapsed to a set; requires
///    converse-equivalent input. Stable partitions are coarser-or-equal
///    than Counting's.
enum class RefinementVariant { Counting, ConverseAware, SetBased };

const char* to_string(RefinementVariant v);
std::optional<RefinementVariant> variant_from_string(std::string_view s);

/// Thrown when a variant's structural precondition fails; carries the
/// validation witnesses in the message.
class PreconditionError : public std::invalid_argument {
public:
    PreconditionError(const std::string& msg, ValidationReport report);
    const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

/// One refinement iteration. The result is canonical-renumbered and its
/// partition is finer-or-equal than the input's. check_preconditions=false
/// skips the converse-equivalence requirement (loop/non-loop disjointness
/// is always required); the mathematical action is unchanged.
ColoredGraph refine_step(const ColoredGraph& g, RefinementVariant variant,
                         bool check_preconditions = true);

struct StabilizationResult {
    ColoredGraph stable_graph;
    int iterations = 0;  // smallest k with the k-th iterate equivalent to the (k+1)-th
    // (vertex class count, edge class count) for iterates 0..k
    std::vector<std::pair<std::size_t, std::size_t>> trace;
};

/// Iterates refine_step to the fixpoint.
StabilizationResult stabilize(const ColoredGraph& g, RefinementVariant variant,
                              bool check_preconditions = true);

struct Wl1Result {
    std::vector<Color> vertex_colors;  // dense canonical ids, classes ordered by least member
    int iterations = 0;
    std::size_t class_count = 0;
};

/// Color refinement on vertices: each round recolors v by (old color,
/// multiset over w of (chi(v,w), color of w)) until the vertex partition
/// is fixed.
Wl1Result wl1_stabilize(const ColoredGraph& g);

struct DistinguishVerdict {
    bool distinguished = false;
    std::optional<Color> witness_color;  // stable color whose half counts differ
    int iterations_used = 0;
};

/// Stabilizes the disjoint union of the two inputs under a shared color
/// namespace (matching ids mean the same color; cross pairs get one fresh
/// color) and compares per-color pair counts between the halves. Never
/// distinguishes color-preserving-isomorphic inputs. Inputs of different
/// size short-circuit at iteration 0.
DistinguishVerdict distinguish(const ColoredGraph& a, const ColoredGraph& b,
                               RefinementVariant variant);

/// Same construction but with 1-dimensional color refinement and
/// per-vertex-class counts.
DistinguishVerdict distinguish_wl1(const ColoredGraph& a, const ColoredGraph& b);

/// Smallest j >= 0 with target coarser-or-equal than the j-th refinement
/// iterate of g. Requires g coarser-or-equal than target and target
/// coarser-or-equal than g's stabilization; throws otherwise.
int min_wl_cover(const ColoredGraph& g, const ColoredGraph& target,
                 RefinementVariant variant = RefinementVariant::Counting);

}  // namespace wl
