#include "wl/cleanup.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace wl {

namespace {

// (edge color, target vertex class) -> degree, per vertex and direction
using DegreeMap = std::map<std::pair<Color, Color>, std::int64_t>;
// target vertex class -> sorted colors seen, per vertex and direction
using ColorSetMap = std::map<Color, std::vector<Color>>;

struct VertexProfile {
    DegreeMap out, in;
};

struct VertexSetProfile {
    ColorSetMap out, in;
};

std::vector<VertexProfile> degree_profiles(const ColoredGraph& g) {
    const std::size_t n = g.size();
    std::vector<VertexProfile> prof(n);
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = 0; v < n; ++v) {
            if (u == v) continue;
            Color c = g.color(u, v);
            prof[u].out[{c, g.loop_color(v)}]++;
            prof[v].in[{c, g.loop_color(u)}]++;
        }
    }
    return prof;
}

std::vector<VertexSetProfile> set_profiles(const ColoredGraph& g) {
    const std::size_t n = g.size();
    std::vector<VertexSetProfile> prof(n);
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = 0; v < n; ++v) {
            if (u == v) continue;
            Color c = g.color(u, v);
            prof[u].out[g.loop_color(v)].push_back(c);
            prof[v].in[g.loop_color(u)].push_back(c);
        }
    }
    for (auto& p : prof) {
        for (auto* m : {&p.out, &p.in}) {
            for (auto& [cls, colors] : *m) {
                std::sort(colors.begin(), colors.end());
                colors.erase(std::unique(colors.begin(), colors.end()), colors.end());
            }
        }
    }
    return prof;
}

// first differing (color, class) entry between two degree maps
std::optional<C2Violation> degree_diff(const DegreeMap& a, const DegreeMap& b,
                                       Color cls, Vertex va, Vertex vb) {
    auto ia = a.begin(), ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
            return C2Violation{ia->first.first, cls, ia->first.second, va, vb, ia->second, 0};
        }
        if (ia == a.end() || ib->first < ia->first) {
            return C2Violation{ib->first.first, cls, ib->first.second, va, vb, 0, ib->second};
        }
        if (ia->second != ib->second) {
            return C2Violation{ia->first.first, cls, ia->first.second,
                               va, vb, ia->second, ib->second};
        }
        ++ia, ++ib;
    }
    return std::nullopt;
}

std::optional<C2Violation> set_diff(const ColorSetMap& a, const ColorSetMap& b,
                                    Color cls, Vertex va, Vertex vb) {
    auto ia = a.begin(), ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
            return C2Violation{ia->second.front(), cls, ia->first, va, vb, -1, -1};
        }
        if (ia == a.end() || ib->first < ia->first) {
            return C2Violation{ib->second.front(), cls, ib->first, va, vb, -1, -1};
        }
        if (ia->second != ib->second) {
            // one color from the symmetric difference as the witness
            std::vector<Color> sym;
            std::set_symmetric_difference(ia->second.begin(), ia->second.end(),
                                          ib->second.begin(), ib->second.end(),
                                          std::back_inserter(sym));
            return C2Violation{sym.front(), cls, ia->first, va, vb, -1, -1};
        }
        ++ia, ++ib;
    }
    return std::nullopt;
}

}  // namespace

ConditionReport check_conditions(const ColoredGraph& g, RefinementVariant variant) {
    const std::size_t n = g.size();
    ConditionReport rep;

    // C1: an edge color determines the loop colors of head and tail
    {
        constexpr Color kUnset = static_cast<Color>(-1);
        std::vector<Color> head(g.palette_size(), kUnset), tail(g.palette_size(), kUnset);
        std::vector<char> bad(g.palette_size(), 0);
        for (Vertex u = 0; u < n; ++u) {
            for (Vertex v = 0; v < n; ++v) {
                if (u == v) continue;
                Color c = g.color(u, v);
                if (head[c] == kUnset) {
                    head[c] = g.loop_color(v);
                    tail[c] = g.loop_color(u);
                } else if (head[c] != g.loop_color(v) || tail[c] != g.loop_color(u)) {
                    bad[c] = 1;
                }
            }
        }
        for (Color c = 0; c < g.palette_size(); ++c)
            if (bad[c]) rep.c1_violations.push_back(c);
    }

    // C2: biregularity between every two vertex classes, per edge color
    auto classes = vertex_class_members(g);
    if (variant == RefinementVariant::SetBased) {
        auto prof = set_profiles(g);
        for (const auto& members : classes) {
            const Vertex rep_v = members.front();
            for (std::size_t i = 1; i < members.size(); ++i) {
                Vertex v = members[i];
                auto d = set_diff(prof[rep_v].out, prof[v].out, g.loop_color(rep_v), rep_v, v);
                if (!d) d = set_diff(prof[rep_v].in, prof[v].in, g.loop_color(rep_v), rep_v, v);
                if (d) {
                    rep.c2_violations.push_back(*d);
                    break;  // one witness pair per class
                }
            }
        }
    } else {
        auto prof = degree_profiles(g);
        for (const auto& members : classes) {
            const Vertex rep_v = members.front();
            for (std::size_t i = 1; i < members.size(); ++i) {
                Vertex v = members[i];
                auto d = degree_diff(prof[rep_v].out, prof[v].out, g.loop_color(rep_v), rep_v, v);
                if (!d) d = degree_diff(prof[rep_v].in, prof[v].in, g.loop_color(rep_v), rep_v, v);
                if (d) {
                    rep.c2_violations.push_back(*d);
                    break;
                }
            }
        }
    }
    return rep;
}

ColoredGraph cleanup_step(const ColoredGraph& g, RefinementVariant variant) {
    const std::size_t n = g.size();

    // move 1: pair -> (old color, head loop color, tail loop color)
    std::map<std::array<Color, 3>, Color> triple_id;
    std::vector<Color> t(n * n);
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = 0; v < n; ++v) {
            std::array<Color, 3> key{g.color(u, v), g.loop_color(v), g.loop_color(u)};
            auto [it, fresh] = triple_id.try_emplace(key, static_cast<Color>(triple_id.size()));
            t[static_cast<std::size_t>(u) * n + v] = it->second;
        }
    }
    ColoredGraph after1(n, std::move(t));

    // move 2: split vertex classes by the full degree (or color set) vector
    std::vector<Color> loop_sig(n);
    if (variant == RefinementVariant::SetBased) {
        auto prof = set_profiles(after1);
        std::map<std::tuple<Color, ColorSetMap, ColorSetMap>, Color> ids;
        for (Vertex v = 0; v < n; ++v) {
            auto key = std::make_tuple(after1.loop_color(v), prof[v].out, prof[v].in);
            auto [it, fresh] = ids.try_emplace(std::move(key), static_cast<Color>(ids.size()));
            loop_sig[v] = it->second;
        }
    } else {
        auto prof = degree_profiles(after1);
        std::map<std::tuple<Color, DegreeMap, DegreeMap>, Color> ids;
        for (Vertex v = 0; v < n; ++v) {
            auto key = std::make_tuple(after1.loop_color(v), prof[v].out, prof[v].in);
            auto [it, fresh] = ids.try_emplace(std::move(key), static_cast<Color>(ids.size()));
            loop_sig[v] = it->second;
        }
    }
    std::vector<Color> t2(after1.table());
    const Color base = static_cast<Color>(after1.palette_size());
    for (Vertex v = 0; v < n; ++v) t2[static_cast<std::size_t>(v) * n + v] = base + loop_sig[v];
    return canonical_renumber(ColoredGraph(n, std::move(t2)));
}

CleanupResult ccu(const ColoredGraph& g, RefinementVariant variant) {
    CleanupResult res;
    res.graph = g;
    const std::size_t n = g.size();
    while (!check_conditions(res.graph, variant).ok()) {
        const std::size_t before = res.graph.vertex_class_count();
        res.graph = cleanup_step(res.graph, variant);
        res.clean_up_steps += 1;
        res.vertex_splits += static_cast<int>(res.graph.vertex_class_count() - before);
        res.trail.push_back(res.graph);
        if (res.clean_up_steps > static_cast<int>(n) + 1) {
            throw std::logic_error("ccu: did not converge within the split bound");
        }
    }
    res.moves = 2 * res.clean_up_steps;
    return res;
}

}  // namespace wl
