#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace wl {

using Color = std::uint32_t;
using Vertex = std::uint32_t;

/// An ordered vertex pair (u,v); (v,v) is the loop at v.
struct PairRef {
    Vertex u = 0;
    Vertex v = 0;
    friend bool operator==(const PairRef&, const PairRef&) = default;
    friend auto operator<=>(const PairRef&, const PairRef&) = default;
};

/// Relation between the pair partitions of two colorings on the same
/// vertex set, read from the first argument's point of view:
/// compare(a, b) == StrictlyFiner means a's partition properly refines b's.
enum class RefinementOrder { Equal, StrictlyFiner, StrictlyCoarser, Incomparable };

const char* to_string(RefinementOrder o);

/// A complete directed graph with loops whose ordered pairs carry a total
/// coloring. Color ids are kept dense: construction remaps the input table
/// monotonically onto 0..palette_size()-1. The partition of V x V induced
/// by the table is the semantic content; ids are just stable names for it.
///
/// Structural properties (loop/non-loop color disjointness, converse
/// equivalence) are computed once at construction and exposed as flags;
/// they are reported, never enforced, so that validate() can describe
/// arbitrary input. Operations that need a property check the flag.
class ColoredGraph {
public:
    ColoredGraph() = default;
    ColoredGraph(std::size_t n, std::vector<Color> row_major_colors);

    /// Loops colored 0, every non-loop pair colored 1 (n >= 2).
    static ColoredGraph uniform(std::size_t n);
    /// Every pair its own color, row-major order.
    static ColoredGraph discrete(std::size_t n);

    std::size_t size() const { return n_; }
    std::size_t palette_size() const { return palette_; }

    Color color(Vertex u, Vertex v) const { return table_[static_cast<std::size_t>(u) * n_ + v]; }
    Color loop_color(Vertex v) const { return color(v, v); }
    std::span<const Color> out_row(Vertex u) const {
        return {table_.data() + static_cast<std::size_t>(u) * n_, n_};
    }
    const std::vector<Color>& table() const { return table_; }

    bool loop_edge_disjoint() const { return loop_edge_disjoint_; }
    bool converse_equivalent() const { return converse_equivalent_; }

    /// True iff every ordered pair forms its own color class.
    bool discrete_partition() const { return palette_ == n_ * n_; }

    std::size_t vertex_class_count() const;
    std::size_t edge_class_count() const;

    /// Color of the reversed pair as a function of the pair color.
    /// Only meaningful when converse_equivalent() holds.
    Color converse_color(Color c) const { return converse_map_[c]; }

    friend bool operator==(const ColoredGraph&, const ColoredGraph&) = default;

private:
    std::size_t n_ = 0;
    std::size_t palette_ = 0;
    std::vector<Color> table_;
    std::vector<Color> converse_map_;
    bool loop_edge_disjoint_ = true;
    bool converse_equivalent_ = true;
};

/// One color class of the pair partition.
struct ColorClass {
    Color color = 0;
    bool is_vertex_class = false;  // all members are loops
    std::vector<PairRef> members;  // row-major order
};

/// The partition pi(chi) of V x V, split into vertex classes (loop pairs
/// only) and edge classes (the rest).
struct PartitionSummary {
    std::vector<ColorClass> classes;  // ascending color id
    std::size_t vertex_class_count = 0;
    std::size_t edge_class_count = 0;
};

PartitionSummary summarize(const ColoredGraph& g);

struct ValidationWitness {
    enum class Kind { LoopEdgeClash, ConverseMismatch };
    Kind kind = Kind::LoopEdgeClash;
    // LoopEdgeClash: first is a loop and second a non-loop pair sharing color_a.
    // ConverseMismatch: first and second share a color but their reversed
    // pairs carry color_a vs color_b (or the symmetric injectivity failure).
    PairRef first, second;
    Color color_a = 0, color_b = 0;
    std::string describe() const;
};

struct ValidationReport {
    bool loop_edge_disjoint = true;
    bool converse_equivalent = true;
    std::vector<ValidationWitness> offending_pairs;
    bool ok() const { return loop_edge_disjoint && converse_equivalent; }
};

/// Checks the structural invariants and gathers witnesses; never throws.
ValidationReport validate(const ColoredGraph& g);

/// Lattice relation between the pair partitions; color id names are ignored.
/// Throws std::invalid_argument when the vertex counts differ.
RefinementOrder compare(const ColoredGraph& a, const ColoredGraph& b);

inline bool refines_or_equal(RefinementOrder o) {
    return o == RefinementOrder::Equal || o == RefinementOrder::StrictlyFiner;
}
inline bool coarser_or_equal(RefinementOrder o) {
    return o == RefinementOrder::Equal || o == RefinementOrder::StrictlyCoarser;
}

/// Deterministic color id normalization: vertex color classes first, then
/// edge color classes, each ordered by their smallest member pair in
/// row-major order. Preserves the partition exactly; idempotent.
ColoredGraph canonical_renumber(const ColoredGraph& g);

enum class Direction { Out, In };

/// Out: { u : chi(v,u) in colors }, In: { u : chi(u,v) in colors }.
/// Contains v itself iff its loop color is in the set.
std::vector<Vertex> neighborhood(const ColoredGraph& g, Vertex v,
                                 std::span<const Color> colors, Direction dir);

/// Relabels vertices: result(perm[u], perm[v]) = g(u, v).
ColoredGraph apply_permutation(const ColoredGraph& g, std::span<const Vertex> perm);

/// FNV-1a over n and the canonical-renumbered table; equal partitions on
/// equal vertex sets hash equally.
std::uint64_t partition_hash(const ColoredGraph& g);

/// Loop color per vertex.
std::vector<Color> vertex_colors(const ColoredGraph& g);

/// Members of each vertex color class, keyed by ascending loop color.
std::vector<std::vector<Vertex>> vertex_class_members(const ColoredGraph& g);

}  // namespace wl
