#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "wl/colored_graph.hpp"

namespace wl {

/// Size threshold separating large vertex color classes (size >= t(n))
/// from small ones. The default rule is t(n) = log2(n)/2; experiments can
/// pin a fixed value instead. The comparison is against the real value,
/// no rounding.
struct ThresholdConfig {
    enum class Kind { Log2Half, Fixed };
    Kind kind = Kind::Log2Half;
    double value = 0.0;

    static ThresholdConfig default_rule() { return {Kind::Log2Half, 0.0}; }
    static ThresholdConfig fixed(double t);
    double at(std::size_t n) const;
};

struct ClassEntry {
    Color color = 0;
    std::vector<Vertex> members;
};

struct ClassSizeReport {
    std::vector<ClassEntry> large;
    std::vector<ClassEntry> small;
};

ClassSizeReport classify_classes(const ColoredGraph& g, const ThresholdConfig& cfg);

/// Potential f: sum over vertices of the number of distinct colors on the
/// vertex's out-row (loop included). Strictly increases under any proper
/// refinement; n <= f <= n^2.
std::int64_t color_potential(const ColoredGraph& g);

/// The set of vertex sets that formed a small vertex color class in some
/// graph registered so far. Evolves by pure extension.
class HistoryTracker {
public:
    const std::set<std::vector<Vertex>>& registered() const { return classes_; }
    std::size_t size() const { return classes_.size(); }
    bool contains(const std::vector<Vertex>& members) const { return classes_.count(members) > 0; }
    void add(std::vector<Vertex> members);  // members must be sorted and nonempty

private:
    std::set<std::vector<Vertex>> classes_;
};

/// Adds every small vertex class of g; idempotent per class set.
HistoryTracker register_history(HistoryTracker tracker, const ColoredGraph& g,
                                const ThresholdConfig& cfg);

/// Bipartitioned undirected graph over (registered class, nonempty subset)
/// pairs: an upper and a lower copy of every such pair, edges only
/// upper-upper and upper-lower. Nodes are addressed by index: upper nodes
/// are [0, side_size()), lower nodes [side_size(), 2*side_size()), and the
/// pair behind index i is ref(i).
///
/// Subsets are restricted to nonempty ones: including the empty subset
/// makes the triangle-completion containment (and with it the strategy
/// loop's termination) fail, because the edge condition is vacuously
/// satisfiable against an empty target.
class AuxGraph {
public:
    struct NodeRef {
        bool upper = true;
        std::uint32_t class_index = 0;
        std::uint32_t mask = 0;  // nonzero bitmask over the class's sorted members
        friend bool operator==(const NodeRef&, const NodeRef&) = default;
    };

    AuxGraph() = default;
    explicit AuxGraph(std::vector<std::vector<Vertex>> classes);  // sorted member lists

    const std::vector<std::vector<Vertex>>& classes() const { return classes_; }
    std::size_t side_size() const { return side_; }
    std::size_t node_count() const { return 2 * side_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::set<std::pair<std::uint32_t, std::uint32_t>>& edges() const { return edges_; }

    bool is_upper(std::uint32_t node) const { return node < side_; }
    NodeRef ref(std::uint32_t node) const;
    std::uint32_t node_id(const NodeRef& r) const;
    std::vector<Vertex> node_members(std::uint32_t node) const;

    bool has_edge(std::uint32_t a, std::uint32_t b) const;
    /// Inserts an upper-upper or upper-lower edge; rejects lower-lower
    /// pairs and self edges.
    void add_edge(std::uint32_t a, std::uint32_t b);

    /// Index of the class with the given sorted member list, if registered.
    std::optional<std::uint32_t> find_class(const std::vector<Vertex>& members) const;

    friend bool operator==(const AuxGraph&, const AuxGraph&) = default;

private:
    std::vector<std::vector<Vertex>> classes_;
    std::vector<std::uint32_t> offsets_;  // node index of each class's first mask
    std::size_t side_ = 0;
    std::set<std::pair<std::uint32_t, std::uint32_t>> edges_;  // normalized a < b
};

/// Decides whether some color set C' makes the subset-selection condition
/// hold in g: every v in `class_members` satisfies
///     v in M  <=>  the C'-out-neighborhood of v equals `target`.
/// M is `member_mask` over `class_members`. Exact over all C' subsets of
/// the palette.
bool subset_definable(const ColoredGraph& g, const std::vector<Vertex>& class_members,
                      std::uint32_t member_mask, const std::vector<Vertex>& target);

/// Aux graph of g against the registered history: upper (C,M) is joined to
/// lower (D,N) iff subset_definable(g, C, M, N); two uppers are joined iff
/// the condition holds in both directions (independent color sets).
AuxGraph build_aux(const ColoredGraph& g, const HistoryTracker& tracker);

/// One simultaneous application of the two insertion rules against the
/// input's adjacency:
///  - two uppers with a common neighbor (either side) become adjacent,
///  - an upper and a lower with a common upper neighbor become adjacent.
AuxGraph triangle_complete(const AuxGraph& h);

/// Fixpoint test, computed both directly and via the structural
/// characterization (per component: uppers form a clique, upper-lower
/// edges complete bipartite). Throws std::logic_error if the two tests
/// ever disagree.
bool is_triangle_stable(const AuxGraph& h);

/// Is every node and edge of `inner` present in `outer` (matching classes
/// by member lists)?
bool aux_contains(const AuxGraph& outer, const AuxGraph& inner);

/// Colors of g's partition that are split into several classes in the
/// refinement `fine`. Requires g coarser-or-equal than fine.
std::vector<Color> split_classes(const ColoredGraph& coarse, const ColoredGraph& fine);

/// True iff every vertex class incident with the given color class is
/// small under cfg (a vertex class is incident with itself).
bool only_small_incident(const ColoredGraph& g, Color color, const ThresholdConfig& cfg);

}  // namespace wl
