#include "wl/io.hpp"

#include <sstream>
#include <stdexcept>

#include "wl/encode.hpp"

namespace wl {

namespace {

// graph6: N(n) followed by the upper triangle, column by column, 6 bits
// per byte, each byte offset by 63
std::size_t parse_graph6_order(const std::string& s, std::size_t& pos) {
    if (pos >= s.size()) throw std::invalid_argument("graph6: empty input");
    if (s[pos] != '~') {
        return static_cast<std::size_t>(s[pos++]) - 63;
    }
    ++pos;
    if (pos < s.size() && s[pos] == '~') {
        ++pos;
        if (pos + 6 > s.size()) throw std::invalid_argument("graph6: truncated order");
        std::size_t n = 0;
        for (int i = 0; i < 6; ++i) n = (n << 6) | (static_cast<std::size_t>(s[pos++]) - 63);
        return n;
    }
    if (pos + 3 > s.size()) throw std::invalid_argument("graph6: truncated order");
    std::size_t n = 0;
    for (int i = 0; i < 3; ++i) n = (n << 6) | (static_cast<std::size_t>(s[pos++]) - 63);
    return n;
}

}  // namespace

ColoredGraph parse_graph6(const std::string& raw) {
    std::string s = raw;
    if (s.rfind(">>graph6<<", 0) == 0) s = s.substr(10);
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    std::size_t pos = 0;
    const std::size_t n = parse_graph6_order(s, pos);
    const std::size_t bits = n * (n - 1) / 2;
    const std::size_t bytes = (bits + 5) / 6;
    if (s.size() - pos < bytes) throw std::invalid_argument("graph6: truncated adjacency data");
    EdgeList edges;
    std::size_t bit = 0;
    for (Vertex v = 1; v < n; ++v) {
        for (Vertex u = 0; u < v; ++u, ++bit) {
            const char c = s[pos + bit / 6];
            if (c < 63 || c > 126) throw std::invalid_argument("graph6: byte out of range");
            if ((c - 63) >> (5 - bit % 6) & 1) edges.emplace_back(u, v);
        }
    }
    return encode_undirected(n, edges);
}

ColoredGraph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    EdgeList edges;
    std::vector<std::pair<Vertex, int>> labels;
    std::size_t n = 0;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        auto fail = [&](const std::string& why) {
            throw std::invalid_argument("edge list line " + std::to_string(lineno) + ": " + why);
        };
        if (head == "n") {
            if (!(ls >> n)) fail("expected vertex count");
        } else if (head == "v") {
            Vertex id;
            int label;
            if (!(ls >> id >> label)) fail("expected `v <id> <label>`");
            labels.emplace_back(id, label);
            n = std::max<std::size_t>(n, id + 1);
        } else {
            Vertex u, v;
            std::istringstream es(line);
            if (!(es >> u >> v)) fail("expected `u v`");
            edges.emplace_back(u, v);
            n = std::max<std::size_t>(n, std::max(u, v) + 1);
        }
    }
    std::optional<std::vector<int>> vertex_labels;
    if (!labels.empty()) {
        vertex_labels.emplace(n, 0);
        for (auto [id, label] : labels) {
            if (id >= n) throw std::invalid_argument("edge list: vertex label out of range");
            (*vertex_labels)[id] = label;
        }
    }
    return encode_undirected(n, edges, vertex_labels);
}

ColoredGraph graph_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("colors")) {
        throw std::invalid_argument("graph json: expected {\"n\": int, \"colors\": [...]}");
    }
    const std::size_t n = j.at("n").get<std::size_t>();
    std::vector<Color> colors = j.at("colors").get<std::vector<Color>>();
    if (colors.size() != n * n) {
        throw std::invalid_argument("graph json: colors must have n*n entries");
    }
    return ColoredGraph(n, std::move(colors));
}

nlohmann::json graph_to_json(const ColoredGraph& g) {
    ColoredGraph c = canonical_renumber(g);
    return nlohmann::json{{"n", c.size()}, {"colors", c.table()}};
}

nlohmann::json transcript_to_json(const GameTranscript& t) {
    nlohmann::json moves = nlohmann::json::array();
    for (const auto& m : t.moves) {
        moves.push_back({{"player", m.player},
                         {"kind", m.kind},
                         {"cost", m.cost},
                         {"class_counts", {m.class_counts.first, m.class_counts.second}},
                         {"graph_hash", m.graph_hash}});
    }
    return nlohmann::json{
        {"moves", std::move(moves)},
        {"summary",
         {{"total_cost", t.total_cost},
          {"wl_iterations", t.iterations_equivalent},
          {"vertex_splits", t.vertex_splits},
          {"n", t.n}}}};
}

nlohmann::json aux_to_json(const AuxGraph& h) {
    auto side_json = [&](bool upper) {
        nlohmann::json arr = nlohmann::json::array();
        for (std::uint32_t i = 0; i < h.side_size(); ++i) {
            std::uint32_t node = upper ? i : static_cast<std::uint32_t>(i + h.side_size());
            auto r = h.ref(node);
            arr.push_back({{"class", h.classes()[r.class_index]}, {"subset_mask", r.mask}});
        }
        return arr;
    };
    nlohmann::json edges = nlohmann::json::array();
    for (auto [a, b] : h.edges()) {
        auto node_json = [&](std::uint32_t node) {
            std::uint32_t within = h.is_upper(node)
                                       ? node
                                       : static_cast<std::uint32_t>(node - h.side_size());
            return nlohmann::json::array({h.is_upper(node) ? "u" : "l", within});
        };
        edges.push_back(nlohmann::json::array({node_json(a), node_json(b)}));
    }
    return nlohmann::json{
        {"upper", side_json(true)}, {"lower", side_json(false)}, {"edges", std::move(edges)}};
}

}  // namespace wl
