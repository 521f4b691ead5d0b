#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "wl/colored_graph.hpp"

namespace wl {

using EdgeList = std::vector<std::pair<Vertex, Vertex>>;

/// Encodes a plain undirected graph: loops colored by vertex label (labels
/// get their own dense id range), adjacent ordered pairs share one color,
/// non-adjacent ordered pairs another. Edges must be loop-free and in
/// range. The result is canonical-renumbered and converse-equivalent.
ColoredGraph encode_undirected(std::size_t n, const EdgeList& edges,
                               const std::optional<std::vector<int>>& vertex_labels = std::nullopt);

/// Adjacency-matrix variant; rejects asymmetric matrices and loops.
ColoredGraph encode_undirected(std::size_t n, const std::vector<bool>& adjacency,
                               const std::optional<std::vector<int>>& vertex_labels = std::nullopt);

/// Encodes a plain directed graph: each non-loop pair colored by its arc
/// pattern in {both, forward only, backward only, neither}. Forward-only
/// at (u,v) pairs with backward-only at (v,u), so the result is
/// converse-equivalent.
ColoredGraph encode_directed(std::size_t n, const EdgeList& arcs);

}  // namespace wl
