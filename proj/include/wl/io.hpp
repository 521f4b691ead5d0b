#pragma once

#include <string>

#include "wl/aux_graph.hpp"
#include "wl/colored_graph.hpp"
#include "wl/game.hpp"

#include "json.hpp"

namespace wl {

/// graph6 string (undirected, loop-free) to its colored encoding.
ColoredGraph parse_graph6(const std::string& s);

/// Whitespace-separated edge list. Lines `u v` add an undirected edge;
/// lines `v <id> <label>` assign a vertex label (optional). Vertices are
/// 0..max id seen, extendable with a `n <count>` line. `#` starts a comment.
ColoredGraph parse_edge_list(const std::string& text);

/// {"n": int, "colors": [n*n ints, row-major]}.
ColoredGraph graph_from_json(const nlohmann::json& j);
nlohmann::json graph_to_json(const ColoredGraph& g);  // canonical-renumbered

nlohmann::json transcript_to_json(const GameTranscript& t);
nlohmann::json aux_to_json(const AuxGraph& h);

}  // namespace wl
