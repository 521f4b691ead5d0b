#pragma once

#include <vector>

#include "wl/colored_graph.hpp"
#include "wl/refine.hpp"

namespace wl {

/// A biregularity failure: under edge color `edge_color`, two vertices of
/// class `class_a` have different color degrees toward class `class_b`.
/// For the set-based variant the witnesses differ in their color sets and
/// `edge_color` is one color from the symmetric difference.
struct C2Violation {
    Color edge_color = 0;
    Color class_a = 0;
    Color class_b = 0;
    Vertex witness_a = 0;
    Vertex witness_b = 0;
    std::int64_t degree_a = 0;  // out or in degree of the witnesses; -1 for set flavor
    std::int64_t degree_b = 0;
};

struct ConditionReport {
    // edge colors whose member pairs have non-uniform head or tail loop colors
    std::vector<Color> c1_violations;
    std::vector<C2Violation> c2_violations;
    bool ok() const { return c1_violations.empty() && c2_violations.empty(); }
};

/// Checks the two regularity conditions. For Counting/ConverseAware the
/// second condition compares color degrees; for SetBased it compares the
/// color sets toward each vertex class.
ConditionReport check_conditions(const ColoredGraph& g, RefinementVariant variant);

/// One two-move repair: move 1 recolors every pair by (old color, head
/// loop color, tail loop color); move 2 refines vertex classes by their
/// full color-degree vector (color-set vector for SetBased). Costs 2 moves
/// in the game's accounting. Output is canonical-renumbered.
ColoredGraph cleanup_step(const ColoredGraph& g, RefinementVariant variant);

struct CleanupResult {
    ColoredGraph graph;
    int clean_up_steps = 0;
    int vertex_splits = 0;  // vertex class count increase across the run
    int moves = 0;          // 2 per step
    std::vector<ColoredGraph> trail;  // graph after each step, empty when already clean
};

/// Repeats cleanup_step until both conditions hold. A graph that already
/// satisfies them is returned unchanged with zero steps.
CleanupResult ccu(const ColoredGraph& g, RefinementVariant variant);

}  // namespace wl
