#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wl/colored_graph.hpp"

namespace wl {

enum class Family {
    Path,
    Cycle,
    DisjointCycles,
    Gnp,
    BoundedColorClass,
    ConverseGap,
    Complete,
};

const char* to_string(Family f);
std::optional<Family> family_from_string(std::string_view s);

/// Seeded construction of the test-graph families. Identical specs produce
/// bit-identical graphs; random bits come from the xorshift64* stream.
struct FamilySpec {
    Family family = Family::Path;
    std::size_t n = 0;                // path, cycle, gnp, bounded_color_class, complete
    double p = 0.5;                   // gnp, bounded_color_class
    std::size_t t = 1;                // bounded_color_class (max class size), converse_gap (block size)
    std::vector<std::size_t> lengths; // disjoint_cycles
    std::uint64_t seed = 0;

    std::string describe() const;
};

/// Dispatches on the family; parameters are validated per family.
///
/// converse_gap(t) is the 2t-vertex coloring with two vertex classes A and
/// B, uniform colors inside A, inside B and from B to A, and A-to-B arcs
/// split by a circulant pattern (i == j or i == j+1 mod t against the
/// rest). For t >= 3 it is stable under the counting refinement but not
/// converse-equivalent, which is what the converse-aware variant detects.
ColoredGraph generate(const FamilySpec& spec);

}  // namespace wl
