#include "wl/encode.hpp"

#include <algorithm>
#include <stdexcept>

namespace wl {

namespace {

std::vector<Color> label_ids(std::size_t n, const std::optional<std::vector<int>>& labels) {
    if (!labels) return std::vector<Color>(n, 0);
    if (labels->size() != n) {
        throw std::invalid_argument("encode: vertex label count does not match n");
    }
    std::vector<int> distinct(*labels);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<Color> out(n);
    for (std::size_t v = 0; v < n; ++v) {
        auto it = std::lower_bound(distinct.begin(), distinct.end(), (*labels)[v]);
        out[v] = static_cast<Color>(it - distinct.begin());
    }
    return out;
}

void check_edge(std::size_t n, Vertex u, Vertex v) {
    if (u >= n || v >= n) throw std::invalid_argument("encode: edge endpoint out of range");
    if (u == v) throw std::invalid_argument("encode: loops are not allowed in the edge list");
}

}  // namespace

ColoredGraph encode_undirected(std::size_t n, const EdgeList& edges,
                               const std::optional<std::vector<int>>& vertex_labels) {
    std::vector<Color> loops = label_ids(n, vertex_labels);
    const Color num_labels = loops.empty() ? 0 : *std::max_element(loops.begin(), loops.end()) + 1;
    const Color edge_color = num_labels, non_edge_color = num_labels + 1;

    std::vector<Color> t(n * n, non_edge_color);
    for (Vertex v = 0; v < n; ++v) t[static_cast<std::size_t>(v) * n + v] = loops[v];
    for (auto [u, v] : edges) {
        check_edge(n, u, v);
        t[static_cast<std::size_t>(u) * n + v] = edge_color;
        t[static_cast<std::size_t>(v) * n + u] = edge_color;
    }
    return canonical_renumber(ColoredGraph(n, std::move(t)));
}

ColoredGraph encode_undirected(std::size_t n, const std::vector<bool>& adjacency,
                               const std::optional<std::vector<int>>& vertex_labels) {
    if (adjacency.size() != n * n) {
        throw std::invalid_argument("encode: adjacency matrix must have n*n entries");
    }
    EdgeList edges;
    for (Vertex u = 0; u < n; ++u) {
        if (adjacency[static_cast<std::size_t>(u) * n + u]) {
            throw std::invalid_argument("encode: adjacency matrix has a loop");
        }
        for (Vertex v = u + 1; v < n; ++v) {
            bool uv = adjacency[static_cast<std::size_t>(u) * n + v];
            bool vu = adjacency[static_cast<std::size_t>(v) * n + u];
            if (uv != vu) {
                throw std::invalid_argument("encode: adjacency matrix is not symmetric at (" +
                                            std::to_string(u) + "," + std::to_string(v) + ")");
            }
            if (uv) edges.emplace_back(u, v);
        }
    }
    return encode_undirected(n, edges, vertex_labels);
}

ColoredGraph encode_directed(std::size_t n, const EdgeList& arcs) {
    std::vector<char> arc(n * n, 0);
    for (auto [u, v] : arcs) {
        check_edge(n, u, v);
        arc[static_cast<std::size_t>(u) * n + v] = 1;
    }
    // 0 loop, 1 both, 2 forward only, 3 backward only, 4 neither
    std::vector<Color> t(n * n, 0);
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = 0; v < n; ++v) {
            if (u == v) continue;
            bool f = arc[static_cast<std::size_t>(u) * n + v];
            bool b = arc[static_cast<std::size_t>(v) * n + u];
            std::size_t i = static_cast<std::size_t>(u) * n + v;
            t[i] = f && b ? 1 : f ? 2 : b ? 3 : 4;
        }
    }
    return canonical_renumber(ColoredGraph(n, std::move(t)));
}

}  // namespace wl
