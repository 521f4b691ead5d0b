#include "wl/aux_graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace wl {

namespace {
constexpr std::uint32_t kMaxClassBits = 16;  // 2^16 subsets per class at most
}

ThresholdConfig ThresholdConfig::fixed(double t) {
    if (!(t > 0.0)) throw std::invalid_argument("threshold must be positive");
    return {Kind::Fixed, t};
}

double ThresholdConfig::at(std::size_t n) const {
    if (kind == Kind::Fixed) return value;
    return n < 2 ? 0.5 : std::log2(static_cast<double>(n)) / 2.0;
}

ClassSizeReport classify_classes(const ColoredGraph& g, const ThresholdConfig& cfg) {
    const double t = cfg.at(g.size());
    ClassSizeReport rep;
    for (auto& members : vertex_class_members(g)) {
        ClassEntry e{g.loop_color(members.front()), std::move(members)};
        if (static_cast<double>(e.members.size()) >= t) rep.large.push_back(std::move(e));
        else rep.small.push_back(std::move(e));
    }
    return rep;
}

std::int64_t color_potential(const ColoredGraph& g) {
    const std::size_t n = g.size();
    std::int64_t f = 0;
    std::vector<Color> row;
    for (Vertex v = 0; v < n; ++v) {
        auto r = g.out_row(v);
        row.assign(r.begin(), r.end());
        std::sort(row.begin(), row.end());
        f += std::unique(row.begin(), row.end()) - row.begin();
    }
    return f;
}

void HistoryTracker::add(std::vector<Vertex> members) {
    if (members.empty()) throw std::invalid_argument("tracker: empty class");
    if (members.size() > kMaxClassBits) {
        throw std::invalid_argument("tracker: class too large to enumerate subsets (" +
                                    std::to_string(members.size()) + " members)");
    }
    classes_.insert(std::move(members));
}

HistoryTracker register_history(HistoryTracker tracker, const ColoredGraph& g,
                                const ThresholdConfig& cfg) {
    for (auto& e : classify_classes(g, cfg).small) tracker.add(std::move(e.members));
    return tracker;
}

AuxGraph::AuxGraph(std::vector<std::vector<Vertex>> classes) : classes_(std::move(classes)) {
    std::sort(classes_.begin(), classes_.end());
    classes_.erase(std::unique(classes_.begin(), classes_.end()), classes_.end());
    offsets_.reserve(classes_.size());
    std::uint32_t off = 0;
    for (const auto& c : classes_) {
        if (c.empty() || !std::is_sorted(c.begin(), c.end()) || c.size() > kMaxClassBits) {
            throw std::invalid_argument("aux: class member lists must be sorted, nonempty, small");
        }
        offsets_.push_back(off);
        off += (1u << c.size()) - 1;  // nonempty masks only
    }
    side_ = off;
}

AuxGraph::NodeRef AuxGraph::ref(std::uint32_t node) const {
    NodeRef r;
    r.upper = node < side_;
    std::uint32_t base = r.upper ? node : node - static_cast<std::uint32_t>(side_);
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), base) - 1;
    r.class_index = static_cast<std::uint32_t>(it - offsets_.begin());
    r.mask = base - *it + 1;
    return r;
}

std::uint32_t AuxGraph::node_id(const NodeRef& r) const {
    std::uint32_t id = offsets_[r.class_index] + r.mask - 1;
    return r.upper ? id : id + static_cast<std::uint32_t>(side_);
}

std::vector<Vertex> AuxGraph::node_members(std::uint32_t node) const {
    NodeRef r = ref(node);
    const auto& cls = classes_[r.class_index];
    std::vector<Vertex> out;
    for (std::size_t i = 0; i < cls.size(); ++i)
        if (r.mask >> i & 1) out.push_back(cls[i]);
    return out;
}

bool AuxGraph::has_edge(std::uint32_t a, std::uint32_t b) const {
    if (a > b) std::swap(a, b);
    return edges_.count({a, b}) > 0;
}

void AuxGraph::add_edge(std::uint32_t a, std::uint32_t b) {
    if (a == b) throw std::invalid_argument("aux: self edges are not allowed");
    if (!is_upper(a) && !is_upper(b)) {
        throw std::invalid_argument("aux: no edges between lower vertices");
    }
    if (a > b) std::swap(a, b);
    if (b >= node_count()) throw std::invalid_argument("aux: node index out of range");
    edges_.insert({a, b});
}

std::optional<std::uint32_t> AuxGraph::find_class(const std::vector<Vertex>& members) const {
    auto it = std::lower_bound(classes_.begin(), classes_.end(), members);
    if (it == classes_.end() || *it != members) return std::nullopt;
    return static_cast<std::uint32_t>(it - classes_.begin());
}

bool subset_definable(const ColoredGraph& g, const std::vector<Vertex>& class_members,
                      std::uint32_t member_mask, const std::vector<Vertex>& target) {
    const std::size_t n = g.size();
    const std::size_t k = g.palette_size();
    if (class_members.size() > kMaxClassBits) {
        throw std::invalid_argument("subset_definable: class too large");
    }

    std::vector<char> in_target(n, 0);
    for (Vertex w : target) in_target[w] = 1;

    // Forced structure of any witness color set C':
    //   R (required): colors on pairs from M into the target,
    //   F (forbidden): colors on pairs from M to anywhere else.
    // With R included and F excluded, every M-row's neighborhood is exactly
    // the target, and remaining "free" colors cannot disturb that.
    std::vector<char> required(k, 0), forbidden(k, 0);
    for (std::size_t i = 0; i < class_members.size(); ++i) {
        if (!(member_mask >> i & 1)) continue;
        const Vertex v = class_members[i];
        for (Vertex w = 0; w < n; ++w) {
            (in_target[w] ? required : forbidden)[g.color(v, w)] = 1;
        }
    }
    for (std::size_t c = 0; c < k; ++c) {
        if (required[c] && forbidden[c]) return false;
    }

    // Non-members must end up with a neighborhood different from the
    // target. Classify each against the forced part R:
    //   escaped: R already reaches outside the target       -> satisfied,
    //   stuck:   R covers the target exactly                -> needs a free
    //            color reaching outside,
    //   partial: R covers a proper subset                   -> must not be
    //            completed to exactly the target.
    struct NonMember {
        Vertex v;
        bool stuck;
        std::vector<Vertex> missing;  // target vertices R does not reach (partial only)
    };
    std::vector<NonMember> pending;
    for (std::size_t i = 0; i < class_members.size(); ++i) {
        if (member_mask >> i & 1) continue;
        const Vertex v = class_members[i];
        bool escaped = false;
        std::vector<char> covered(target.size(), 0);
        std::size_t covered_count = 0;
        for (Vertex w = 0; w < n && !escaped; ++w) {
            if (!required[g.color(v, w)]) continue;
            if (!in_target[w]) { escaped = true; break; }
            auto pos = std::lower_bound(target.begin(), target.end(), w) - target.begin();
            if (!covered[pos]) { covered[pos] = 1; ++covered_count; }
        }
        if (escaped) continue;
        NonMember nm{v, covered_count == target.size(), {}};
        if (!nm.stuck) {
            for (std::size_t p = 0; p < target.size(); ++p)
                if (!covered[p]) nm.missing.push_back(target[p]);
        }
        pending.push_back(std::move(nm));
    }
    if (pending.empty()) return true;

    // Free colors only occur on non-member rows, so adding them never
    // disturbs the members. A stuck row needs some free color reaching
    // outside the target; a partial row is safe as long as one missing
    // target vertex stays unreached. Enumerate, per partial row, whether it
    // is rescued by an outside hit or by a designated missing vertex; the
    // designation bans exactly one color (the one on that row cell).
    auto has_outside_hit = [&](Vertex v, const std::vector<Color>& banned) {
        for (Vertex w = 0; w < n; ++w) {
            if (in_target[w]) continue;
            Color c = g.color(v, w);
            if (required[c] || forbidden[c]) continue;
            if (std::find(banned.begin(), banned.end(), c) == banned.end()) return true;
        }
        return false;
    };

    std::vector<std::size_t> partial_idx;
    for (std::size_t i = 0; i < pending.size(); ++i)
        if (!pending[i].stuck) partial_idx.push_back(i);

    // choice per partial row: 0 = outside hit, 1..missing.size() = witness
    std::vector<std::size_t> choice(partial_idx.size(), 0);
    for (;;) {
        std::vector<Color> banned;
        for (std::size_t i = 0; i < partial_idx.size(); ++i) {
            if (choice[i] == 0) continue;
            const auto& nm = pending[partial_idx[i]];
            banned.push_back(g.color(nm.v, nm.missing[choice[i] - 1]));
        }
        bool ok = true;
        for (const auto& nm : pending) {
            if (nm.stuck && !has_outside_hit(nm.v, banned)) { ok = false; break; }
        }
        if (ok) {
            for (std::size_t i = 0; i < partial_idx.size() && ok; ++i) {
                if (choice[i] == 0) ok = has_outside_hit(pending[partial_idx[i]].v, banned);
            }
        }
        if (ok) return true;
        // next assignment
        std::size_t pos = 0;
        while (pos < choice.size()) {
            if (++choice[pos] <= pending[partial_idx[pos]].missing.size()) break;
            choice[pos] = 0;
            ++pos;
        }
        if (pos == choice.size()) return false;
    }
}

AuxGraph build_aux(const ColoredGraph& g, const HistoryTracker& tracker) {
    std::vector<std::vector<Vertex>> classes(tracker.registered().begin(),
                                             tracker.registered().end());
    AuxGraph h(std::move(classes));
    const std::size_t side = h.side_size();

    // node member vectors, deduplicated as definability targets
    std::vector<std::vector<Vertex>> members(side);
    std::map<std::vector<Vertex>, std::uint32_t> target_id;
    std::vector<std::uint32_t> target_of(side);
    for (std::uint32_t i = 0; i < side; ++i) {
        members[i] = h.node_members(i);
        target_of[i] = target_id.emplace(members[i], static_cast<std::uint32_t>(target_id.size()))
                           .first->second;
    }

    // memoized directional condition: node i selects target q
    std::vector<std::vector<signed char>> memo(side,
                                               std::vector<signed char>(target_id.size(), -1));
    auto selects = [&](std::uint32_t i, std::uint32_t q, const std::vector<Vertex>& tgt) {
        signed char& m = memo[i][q];
        if (m < 0) {
            auto r = h.ref(i);
            m = subset_definable(g, h.classes()[r.class_index], r.mask, tgt) ? 1 : 0;
        }
        return m == 1;
    };

    for (std::uint32_t a = 0; a < side; ++a) {
        for (std::uint32_t b = 0; b < side; ++b) {
            if (selects(a, target_of[b], members[b])) {
                h.add_edge(a, static_cast<std::uint32_t>(b + side));  // upper a - lower b
            }
        }
    }
    for (std::uint32_t a = 0; a < side; ++a) {
        for (std::uint32_t b = a + 1; b < side; ++b) {
            if (selects(a, target_of[b], members[b]) && selects(b, target_of[a], members[a])) {
                h.add_edge(a, b);  // upper-upper, both directions hold
            }
        }
    }
    return h;
}

namespace {

// adjacency bitsets over node indices
struct Bitsets {
    std::size_t words;
    std::vector<std::uint64_t> bits;
    explicit Bitsets(std::size_t nodes) : words((nodes + 63) / 64), bits(words * nodes, 0) {}
    void set(std::size_t a, std::size_t b) { bits[a * words + b / 64] |= 1ull << (b % 64); }
    // intersection of rows a and b limited to the first `limit` node indices
    bool intersects(std::size_t a, std::size_t b, std::size_t limit) const {
        const std::uint64_t* ra = &bits[a * words];
        const std::uint64_t* rb = &bits[b * words];
        std::size_t full = limit / 64;
        for (std::size_t w = 0; w < full; ++w)
            if (ra[w] & rb[w]) return true;
        if (limit % 64) {
            std::uint64_t m = (1ull << (limit % 64)) - 1;
            if (ra[full] & rb[full] & m) return true;
        }
        return false;
    }
};

Bitsets adjacency(const AuxGraph& h) {
    Bitsets adj(h.node_count());
    for (auto [a, b] : h.edges()) {
        adj.set(a, b);
        adj.set(b, a);
    }
    return adj;
}

}  // namespace

AuxGraph triangle_complete(const AuxGraph& h) {
    const std::size_t side = h.side_size();
    const std::size_t total = h.node_count();
    Bitsets adj = adjacency(h);
    AuxGraph out = h;
    for (std::uint32_t a = 0; a < side; ++a) {
        // rule 1: uppers with a common neighbor anywhere
        for (std::uint32_t b = a + 1; b < side; ++b) {
            if (!out.has_edge(a, b) && adj.intersects(a, b, total)) out.add_edge(a, b);
        }
        // rule 2: upper and lower with a common upper neighbor
        for (std::uint32_t l = static_cast<std::uint32_t>(side); l < total; ++l) {
            if (!out.has_edge(a, l) && adj.intersects(a, l, side)) out.add_edge(a, l);
        }
    }
    return out;
}

bool is_triangle_stable(const AuxGraph& h) {
    const bool fixpoint = triangle_complete(h) == h;

    // structural characterization: per connected component the uppers form
    // a clique and the upper-lower edges are complete bipartite
    const std::size_t total = h.node_count();
    std::vector<std::uint32_t> parent(total);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto [a, b] : h.edges()) parent[find(a)] = find(b);

    std::map<std::uint32_t, std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>>
        comps;
    for (std::uint32_t v = 0; v < total; ++v) {
        auto& [ups, lows] = comps[find(v)];
        (h.is_upper(v) ? ups : lows).push_back(v);
    }
    bool structural = true;
    for (const auto& [root, comp] : comps) {
        const auto& [ups, lows] = comp;
        for (std::size_t i = 0; i < ups.size() && structural; ++i)
            for (std::size_t j = i + 1; j < ups.size() && structural; ++j)
                structural = h.has_edge(ups[i], ups[j]);
        for (std::size_t i = 0; i < ups.size() && structural; ++i)
            for (std::size_t j = 0; j < lows.size() && structural; ++j)
                structural = h.has_edge(ups[i], lows[j]);
        if (!structural) break;
    }

    if (fixpoint != structural) {
        throw std::logic_error("aux stability: fixpoint and structural tests disagree");
    }
    return fixpoint;
}

bool aux_contains(const AuxGraph& outer, const AuxGraph& inner) {
    std::vector<std::uint32_t> class_map(inner.classes().size());
    for (std::size_t i = 0; i < inner.classes().size(); ++i) {
        auto idx = outer.find_class(inner.classes()[i]);
        if (!idx) return false;
        class_map[i] = *idx;
    }
    for (auto [a, b] : inner.edges()) {
        auto translate = [&](std::uint32_t node) {
            AuxGraph::NodeRef r = inner.ref(node);
            r.class_index = class_map[r.class_index];
            return outer.node_id(r);
        };
        if (!outer.has_edge(translate(a), translate(b))) return false;
    }
    return true;
}

std::vector<Color> split_classes(const ColoredGraph& coarse, const ColoredGraph& fine) {
    if (!coarser_or_equal(compare(coarse, fine))) {
        throw std::invalid_argument("split_classes: second graph must refine the first");
    }
    constexpr Color kUnset = static_cast<Color>(-1);
    std::vector<Color> parent(fine.palette_size(), kUnset);
    for (std::size_t i = 0; i < fine.table().size(); ++i) {
        parent[fine.table()[i]] = coarse.table()[i];
    }
    std::vector<std::uint32_t> children(coarse.palette_size(), 0);
    for (Color p : parent)
        if (p != kUnset) children[p]++;
    std::vector<Color> out;
    for (Color c = 0; c < coarse.palette_size(); ++c)
        if (children[c] > 1) out.push_back(c);
    return out;
}

bool only_small_incident(const ColoredGraph& g, Color color, const ThresholdConfig& cfg) {
    const double t = cfg.at(g.size());
    std::vector<std::size_t> class_size(g.palette_size(), 0);
    for (Vertex v = 0; v < g.size(); ++v) class_size[g.loop_color(v)]++;
    auto small = [&](Color loop) { return static_cast<double>(class_size[loop]) < t; };
    for (Vertex u = 0; u < g.size(); ++u) {
        for (Vertex v = 0; v < g.size(); ++v) {
            if (g.color(u, v) != color) continue;
            if (!small(g.loop_color(u)) || !small(g.loop_color(v))) return false;
        }
    }
    return true;
}

}  // namespace wl
