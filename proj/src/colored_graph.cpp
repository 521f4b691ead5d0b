#include "wl/colored_graph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace wl {

const char* to_string(RefinementOrder o) {
    switch (o) {
        case RefinementOrder::Equal: return "equal";
        case RefinementOrder::StrictlyFiner: return "strictly-finer";
        case RefinementOrder::StrictlyCoarser: return "strictly-coarser";
        case RefinementOrder::Incomparable: return "incomparable";
    }
    return "?";
}

ColoredGraph::ColoredGraph(std::size_t n, std::vector<Color> row_major_colors)
    : n_(n), table_(std::move(row_major_colors)) {
    if (table_.size() != n_ * n_) {
        throw std::invalid_argument("color table must have n*n entries");
    }
    // densify ids, preserving their relative order
    std::vector<Color> ids(table_);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    palette_ = ids.size();
    if (!ids.empty() && ids.back() != palette_ - 1) {
        std::unordered_map<Color, Color> remap;
        remap.reserve(palette_);
        for (std::size_t i = 0; i < ids.size(); ++i) remap[ids[i]] = static_cast<Color>(i);
        for (auto& c : table_) c = remap[c];
    }

    // structural flags
    std::vector<char> on_loop(palette_, 0), on_edge(palette_, 0);
    for (Vertex v = 0; v < n_; ++v) on_loop[loop_color(v)] = 1;
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v = 0; v < n_; ++v)
            if (u != v) on_edge[color(u, v)] = 1;
    loop_edge_disjoint_ = true;
    for (std::size_t c = 0; c < palette_; ++c)
        if (on_loop[c] && on_edge[c]) { loop_edge_disjoint_ = false; break; }

    constexpr Color kUnset = static_cast<Color>(-1);
    converse_map_.assign(palette_, kUnset);
    converse_equivalent_ = true;
    for (Vertex u = 0; u < n_ && converse_equivalent_; ++u) {
        for (Vertex v = 0; v < n_; ++v) {
            Color c = color(u, v), d = color(v, u);
            if (converse_map_[c] == kUnset) {
                converse_map_[c] = d;
            } else if (converse_map_[c] != d) {
                converse_equivalent_ = false;
                break;
            }
        }
    }
    if (converse_equivalent_) {
        // the reverse map must also be injective
        std::vector<char> hit(palette_, 0);
        for (std::size_t c = 0; c < palette_; ++c) {
            Color d = converse_map_[c];
            if (d == kUnset) continue;
            if (hit[d]) { converse_equivalent_ = false; break; }
            hit[d] = 1;
        }
    }
}

ColoredGraph ColoredGraph::uniform(std::size_t n) {
    std::vector<Color> t(n * n, 1);
    for (Vertex v = 0; v < n; ++v) t[static_cast<std::size_t>(v) * n + v] = 0;
    return ColoredGraph(n, std::move(t));
}

ColoredGraph ColoredGraph::discrete(std::size_t n) {
    std::vector<Color> t(n * n);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<Color>(i);
    return ColoredGraph(n, std::move(t));
}

std::size_t ColoredGraph::vertex_class_count() const {
    std::set<Color> s;
    for (Vertex v = 0; v < n_; ++v) s.insert(loop_color(v));
    return s.size();
}

std::size_t ColoredGraph::edge_class_count() const {
    std::set<Color> s;
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v = 0; v < n_; ++v)
            if (u != v) s.insert(color(u, v));
    return s.size();
}

PartitionSummary summarize(const ColoredGraph& g) {
    const std::size_t n = g.size();
    PartitionSummary out;
    out.classes.resize(g.palette_size());
    for (std::size_t c = 0; c < g.palette_size(); ++c) {
        out.classes[c].color = static_cast<Color>(c);
        out.classes[c].is_vertex_class = true;  // until a non-loop member shows up
    }
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = 0; v < n; ++v) {
            auto& cls = out.classes[g.color(u, v)];
            cls.members.push_back({u, v});
            if (u != v) cls.is_vertex_class = false;
        }
    }
    for (const auto& cls : out.classes) {
        if (cls.is_vertex_class) ++out.vertex_class_count;
        else ++out.edge_class_count;
    }
    return out;
}

std::string ValidationWitness::describe() const {
    auto pair_str = [](PairRef p) {
        return "(" + std::to_string(p.u) + "," + std::to_string(p.v) + ")";
    };
    if (kind == Kind::LoopEdgeClash) {
        return "loop " + pair_str(first) + " and arc " + pair_str(second) +
               " share color " + std::to_string(color_a);
    }
    return "pairs " + pair_str(first) + " and " + pair_str(second) +
           " share a color but their reverses carry " + std::to_string(color_a) +
           " vs " + std::to_string(color_b);
}

ValidationReport validate(const ColoredGraph& g) {
    const std::size_t n = g.size();
    ValidationReport rep;

    // loop/non-loop disjointness, with one witness per clashing color
    std::unordered_map<Color, PairRef> loop_seen;
    for (Vertex v = 0; v < n; ++v) loop_seen.try_emplace(g.loop_color(v), PairRef{v, v});
    std::set<Color> reported;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = 0; v < n; ++v) {
            if (u == v) continue;
            Color c = g.color(u, v);
            auto it = loop_seen.find(c);
            if (it != loop_seen.end() && reported.insert(c).second) {
                rep.loop_edge_disjoint = false;
                rep.offending_pairs.push_back({ValidationWitness::Kind::LoopEdgeClash,
                                               it->second, PairRef{u, v}, c, c});
            }
        }
    }

    // converse equivalence: the color of (u,v) must determine the color of
    // (v,u), and that map must be injective
    std::unordered_map<Color, PairRef> first_with;
    std::unordered_map<Color, Color> fwd;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = 0; v < n; ++v) {
            Color c = g.color(u, v), d = g.color(v, u);
            auto [it, fresh] = fwd.try_emplace(c, d);
            if (fresh) {
                first_with[c] = PairRef{u, v};
            } else if (it->second != d) {
                rep.converse_equivalent = false;
                rep.offending_pairs.push_back({ValidationWitness::Kind::ConverseMismatch,
                                               first_with[c], PairRef{u, v}, it->second, d});
            }
        }
    }
    if (rep.converse_equivalent) {
        std::unordered_map<Color, Color> rev;
        for (auto [c, d] : fwd) {
            auto [it, fresh] = rev.try_emplace(d, c);
            if (!fresh && it->second != c) {
                rep.converse_equivalent = false;
                rep.offending_pairs.push_back({ValidationWitness::Kind::ConverseMismatch,
                                               first_with[it->second], first_with[c], d, d});
                break;
            }
        }
    }
    return rep;
}

namespace {

// Does b's partition refine a's (every b-class inside one a-class)?
bool refines(const ColoredGraph& a, const ColoredGraph& b) {
    constexpr Color kUnset = static_cast<Color>(-1);
    std::vector<Color> to_a(b.palette_size(), kUnset);
    const auto& at = a.table();
    const auto& bt = b.table();
    for (std::size_t i = 0; i < bt.size(); ++i) {
        Color& m = to_a[bt[i]];
        if (m == kUnset) m = at[i];
        else if (m != at[i]) return false;
    }
    return true;
}

}  // namespace

RefinementOrder compare(const ColoredGraph& a, const ColoredGraph& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("compare: vertex counts differ (" +
                                    std::to_string(a.size()) + " vs " +
                                    std::to_string(b.size()) + ")");
    }
    const bool a_fine = refines(b, a);  // a refines b
    const bool b_fine = refines(a, b);  // b refines a
    if (a_fine && b_fine) return RefinementOrder::Equal;
    if (a_fine) return RefinementOrder::StrictlyFiner;
    if (b_fine) return RefinementOrder::StrictlyCoarser;
    return RefinementOrder::Incomparable;
}

ColoredGraph canonical_renumber(const ColoredGraph& g) {
    const std::size_t n = g.size();
    const std::size_t k = g.palette_size();
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    std::vector<std::size_t> first_seen(k, kNone);
    std::vector<char> has_loop(k, 0);
    const auto& t = g.table();
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (first_seen[t[i]] == kNone) first_seen[t[i]] = i;
    }
    for (Vertex v = 0; v < n; ++v) has_loop[g.loop_color(v)] = 1;

    std::vector<Color> order;
    order.reserve(k);
    for (Color c = 0; c < k; ++c) order.push_back(c);
    std::stable_sort(order.begin(), order.end(), [&](Color x, Color y) {
        if (has_loop[x] != has_loop[y]) return has_loop[x] > has_loop[y];
        return first_seen[x] < first_seen[y];
    });
    std::vector<Color> remap(k);
    for (std::size_t i = 0; i < k; ++i) remap[order[i]] = static_cast<Color>(i);
    std::vector<Color> nt(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) nt[i] = remap[t[i]];
    return ColoredGraph(n, std::move(nt));
}

std::vector<Vertex> neighborhood(const ColoredGraph& g, Vertex v,
                                 std::span<const Color> colors, Direction dir) {
    if (v >= g.size()) throw std::invalid_argument("neighborhood: vertex out of range");
    std::vector<char> want(g.palette_size(), 0);
    for (Color c : colors)
        if (c < g.palette_size()) want[c] = 1;
    std::vector<Vertex> out;
    for (Vertex u = 0; u < g.size(); ++u) {
        Color c = dir == Direction::Out ? g.color(v, u) : g.color(u, v);
        if (want[c]) out.push_back(u);
    }
    return out;
}

ColoredGraph apply_permutation(const ColoredGraph& g, std::span<const Vertex> perm) {
    const std::size_t n = g.size();
    if (perm.size() != n) throw std::invalid_argument("apply_permutation: size mismatch");
    std::vector<Color> t(n * n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v)
            t[static_cast<std::size_t>(perm[u]) * n + perm[v]] = g.color(u, v);
    return ColoredGraph(n, std::move(t));
}

std::uint64_t partition_hash(const ColoredGraph& g) {
    ColoredGraph c = canonical_renumber(g);
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t x) {
        for (int i = 0; i < 8; ++i) {
            h ^= (x >> (8 * i)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    mix(c.size());
    for (Color v : c.table()) mix(v);
    return h;
}

std::vector<Color> vertex_colors(const ColoredGraph& g) {
    std::vector<Color> out(g.size());
    for (Vertex v = 0; v < g.size(); ++v) out[v] = g.loop_color(v);
    return out;
}

std::vector<std::vector<Vertex>> vertex_class_members(const ColoredGraph& g) {
    std::map<Color, std::vector<Vertex>> by_color;
    for (Vertex v = 0; v < g.size(); ++v) by_color[g.loop_color(v)].push_back(v);
    std::vector<std::vector<Vertex>> out;
    out.reserve(by_color.size());
    for (auto& [c, vs] : by_color) out.push_back(std::move(vs));
    return out;
}

}  // namespace wl
