#include "wl/refine.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace wl {

const char* to_string(RefinementVariant v) {
    switch (v) {
        case RefinementVariant::Counting: return "counting";
        case RefinementVariant::ConverseAware: return "converse-aware";
        case RefinementVariant::SetBased: return "set";
    }
    return "?";
}

std::optional<RefinementVariant> variant_from_string(std::string_view s) {
    if (s == "counting") return RefinementVariant::Counting;
    if (s == "converse-aware" || s == "aware") return RefinementVariant::ConverseAware;
    if (s == "set") return RefinementVariant::SetBased;
    return std::nullopt;
}

PreconditionError::PreconditionError(const std::string& msg, ValidationReport report)
    : std::invalid_argument([&] {
          std::string m = msg;
          for (std::size_t i = 0; i < report.offending_pairs.size() && i < 3; ++i) {
              m += "; " + report.offending_pairs[i].describe();
          }
          return m;
      }()),
      report_(std::move(report)) {}

namespace {

void require_valid(const ColoredGraph& g, RefinementVariant variant, bool check_preconditions) {
    if (!g.loop_edge_disjoint()) {
        throw PreconditionError("refine: loop and non-loop colors are not disjoint", validate(g));
    }
    const bool needs_converse = variant != RefinementVariant::ConverseAware;
    if (check_preconditions && needs_converse && !g.converse_equivalent()) {
        throw PreconditionError(std::string("refine: variant '") + to_string(variant) +
                                    "' requires a converse-equivalent coloring",
                                validate(g));
    }
}

// Splits the pairs of every old color class by their signature multiset.
// Entry is uint64 for the 2-tuple variants and array<Color,4> for the
// converse-aware one; processing one old class at a time keeps the
// transient memory proportional to the largest class.
template <typename Entry, typename FillRow>
ColoredGraph refine_with(const ColoredGraph& g, bool dedupe_entries, FillRow fill_row) {
    const std::size_t n = g.size();
    std::vector<std::vector<std::uint32_t>> buckets(g.palette_size());
    for (std::uint32_t i = 0; i < n * n; ++i) buckets[g.table()[i]].push_back(i);

    std::vector<Color> result(n * n);
    Color next = 0;
    std::vector<Entry> sig;
    for (const auto& bucket : buckets) {
        std::vector<std::pair<std::vector<Entry>, std::uint32_t>> sigs;
        sigs.reserve(bucket.size());
        for (std::uint32_t idx : bucket) {
            const Vertex u = static_cast<Vertex>(idx / n);
            const Vertex v = static_cast<Vertex>(idx % n);
            sig.clear();
            sig.resize(n);
            fill_row(u, v, sig);
            std::sort(sig.begin(), sig.end());
            if (dedupe_entries) sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
            sigs.emplace_back(std::move(sig), idx);
        }
        std::sort(sigs.begin(), sigs.end());
        for (std::size_t i = 0; i < sigs.size(); ++i) {
            if (i > 0 && sigs[i].first != sigs[i - 1].first) ++next;
            result[sigs[i].second] = next;
        }
        ++next;
    }
    return canonical_renumber(ColoredGraph(n, std::move(result)));
}

}  // namespace

ColoredGraph refine_step(const ColoredGraph& g, RefinementVariant variant,
                         bool check_preconditions) {
    require_valid(g, variant, check_preconditions);
    const std::size_t n = g.size();
    const std::uint64_t k = g.palette_size();
    const auto& t = g.table();

    switch (variant) {
        case RefinementVariant::Counting:
        case RefinementVariant::SetBased:
            return refine_with<std::uint64_t>(
                g, variant == RefinementVariant::SetBased,
                [&](Vertex u, Vertex v, std::vector<std::uint64_t>& row) {
                    for (std::size_t w = 0; w < n; ++w) {
                        row[w] = static_cast<std::uint64_t>(t[w * n + v]) * k + t[u * n + w];
                    }
                });
        case RefinementVariant::ConverseAware:
            return refine_with<std::array<Color, 4>>(
                g, false, [&](Vertex u, Vertex v, std::vector<std::array<Color, 4>>& row) {
                    for (std::size_t w = 0; w < n; ++w) {
                        row[w] = {t[w * n + v], t[v * n + w], t[u * n + w], t[w * n + u]};
                    }
                });
    }
    throw std::logic_error("refine_step: unknown variant");
}

StabilizationResult stabilize(const ColoredGraph& g, RefinementVariant variant,
                              bool check_preconditions) {
    StabilizationResult res;
    res.stable_graph = canonical_renumber(g);
    res.trace.emplace_back(res.stable_graph.vertex_class_count(),
                           res.stable_graph.edge_class_count());
    const std::size_t n = g.size();
    const std::size_t cap = n <= 1 ? 1 : n * n;  // iterations < n*n always
    for (std::size_t i = 0; i < cap; ++i) {
        ColoredGraph next = refine_step(res.stable_graph, variant, check_preconditions);
        // each step refines, so an unchanged class count means a fixpoint
        if (next.palette_size() == res.stable_graph.palette_size()) return res;
        res.stable_graph = std::move(next);
        ++res.iterations;
        res.trace.emplace_back(res.stable_graph.vertex_class_count(),
                               res.stable_graph.edge_class_count());
    }
    throw std::logic_error("stabilize: exceeded the trivial iteration bound");
}

Wl1Result wl1_stabilize(const ColoredGraph& g) {
    if (!g.loop_edge_disjoint()) {
        throw PreconditionError("wl1: loop and non-loop colors are not disjoint", validate(g));
    }
    const std::size_t n = g.size();
    const auto& t = g.table();

    // initial vertex partition from loop colors, densified
    std::vector<Color> vc(n);
    {
        std::map<Color, Color> remap;
        for (Vertex v = 0; v < n; ++v) remap.emplace(g.loop_color(v), 0);
        Color next = 0;
        for (auto& [c, id] : remap) id = next++;
        for (Vertex v = 0; v < n; ++v) vc[v] = remap[g.loop_color(v)];
    }
    auto count_classes = [](const std::vector<Color>& xs) {
        std::vector<Color> s(xs);
        std::sort(s.begin(), s.end());
        return static_cast<std::size_t>(std::unique(s.begin(), s.end()) - s.begin());
    };

    Wl1Result res;
    std::size_t classes = count_classes(vc);
    for (;;) {
        std::vector<std::pair<std::vector<std::uint64_t>, Vertex>> sigs(n);
        const std::uint64_t kv = classes;
        for (Vertex v = 0; v < n; ++v) {
            auto& s = sigs[v].first;
            s.resize(n + 1);
            s[0] = vc[v];  // old color first keeps the rounds monotone
            for (std::size_t w = 0; w < n; ++w) {
                s[w + 1] = static_cast<std::uint64_t>(t[v * n + w]) * kv + vc[w];
            }
            std::sort(s.begin() + 1, s.end());
            sigs[v].second = v;
        }
        std::sort(sigs.begin(), sigs.end());
        std::vector<Color> next(n);
        Color id = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (i > 0 && sigs[i].first != sigs[i - 1].first) ++id;
            next[sigs[i].second] = id;
        }
        std::size_t next_classes = count_classes(next);
        if (next_classes == classes) break;
        vc = std::move(next);
        classes = next_classes;
        ++res.iterations;
    }
    // canonical ids: classes ordered by least member
    std::vector<Color> remap(classes, static_cast<Color>(-1));
    Color id = 0;
    for (Vertex v = 0; v < n; ++v) {
        if (remap[vc[v]] == static_cast<Color>(-1)) remap[vc[v]] = id++;
    }
    for (auto& c : vc) c = remap[c];
    res.vertex_colors = std::move(vc);
    res.class_count = classes;
    return res;
}

namespace {

// Disjoint union under a shared color namespace; cross pairs get one fresh
// color. The raw ids are kept (not densified per half) so that matching ids
// in the two inputs stay matched.
ColoredGraph union_graph(const ColoredGraph& a, const ColoredGraph& b) {
    const std::size_t na = a.size(), nb = b.size(), n = na + nb;
    const Color cross = static_cast<Color>(std::max(a.palette_size(), b.palette_size()));
    std::vector<Color> t(n * n, cross);
    for (Vertex u = 0; u < na; ++u)
        for (Vertex v = 0; v < na; ++v) t[static_cast<std::size_t>(u) * n + v] = a.color(u, v);
    for (Vertex u = 0; u < nb; ++u)
        for (Vertex v = 0; v < nb; ++v)
            t[(static_cast<std::size_t>(u) + na) * n + (v + na)] = b.color(u, v);
    return ColoredGraph(n, std::move(t));
}

// First color whose pair counts restricted to the two halves differ.
std::optional<Color> half_count_witness(const ColoredGraph& u, std::size_t na) {
    const std::size_t n = u.size();
    std::vector<std::int64_t> delta(u.palette_size(), 0);
    for (Vertex x = 0; x < n; ++x) {
        for (Vertex y = 0; y < n; ++y) {
            if (x < na && y < na) delta[u.color(x, y)]++;
            else if (x >= na && y >= na) delta[u.color(x, y)]--;
        }
    }
    for (Color c = 0; c < delta.size(); ++c)
        if (delta[c] != 0) return c;
    return std::nullopt;
}

}  // namespace

DistinguishVerdict distinguish(const ColoredGraph& a, const ColoredGraph& b,
                               RefinementVariant variant) {
    ColoredGraph u = union_graph(a, b);
    if (!u.loop_edge_disjoint()) {
        // a color is used on loops in one input and on arcs in the other;
        // no color-preserving isomorphism can exist
        auto rep = validate(u);
        Color witness = rep.offending_pairs.empty() ? 0 : rep.offending_pairs.front().color_a;
        return {true, witness, 0};
    }
    if (a.size() != b.size()) {
        auto witness = half_count_witness(u, a.size());
        return {true, witness, 0};
    }
    StabilizationResult st = stabilize(u, variant);
    auto witness = half_count_witness(st.stable_graph, a.size());
    return {witness.has_value(), witness, st.iterations};
}

DistinguishVerdict distinguish_wl1(const ColoredGraph& a, const ColoredGraph& b) {
    ColoredGraph u = union_graph(a, b);
    if (!u.loop_edge_disjoint()) {
        auto rep = validate(u);
        Color witness = rep.offending_pairs.empty() ? 0 : rep.offending_pairs.front().color_a;
        return {true, witness, 0};
    }
    const std::size_t na = a.size();
    if (a.size() != b.size()) {
        auto witness = half_count_witness(u, na);
        return {true, witness, 0};
    }
    Wl1Result res = wl1_stabilize(u);
    std::vector<std::int64_t> delta(res.class_count, 0);
    for (Vertex v = 0; v < u.size(); ++v) {
        delta[res.vertex_colors[v]] += v < na ? 1 : -1;
    }
    for (Color c = 0; c < delta.size(); ++c) {
        if (delta[c] != 0) return {true, c, res.iterations};
    }
    return {false, std::nullopt, res.iterations};
}

int min_wl_cover(const ColoredGraph& g, const ColoredGraph& target, RefinementVariant variant) {
    if (!coarser_or_equal(compare(g, target))) {
        throw std::invalid_argument("min_wl_cover: target does not refine the start graph");
    }
    ColoredGraph cur = g;
    for (int j = 0;; ++j) {
        if (coarser_or_equal(compare(target, cur))) return j;
        ColoredGraph next = refine_step(cur, variant);
        if (next.palette_size() == cur.palette_size()) {
            throw std::invalid_argument(
                "min_wl_cover: target is finer than the stabilization of the start graph");
        }
        cur = std::move(next);
    }
}

}  // namespace wl
