#include "support/instances.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "wl/game.hpp"

namespace testutil {

oracle::Table to_table(const wl::ColoredGraph& g) {
    return oracle::Table(g.table().begin(), g.table().end());
}

wl::ColoredGraph random_converse_equivalent(std::size_t n, wl::Xorshift64Star& rng,
                                            std::size_t max_loop_colors,
                                            std::size_t max_edge_colors) {
    const std::size_t loops = 1 + rng.next_below(max_loop_colors);
    const std::size_t edges = 1 + rng.next_below(max_edge_colors);
    // random involution on edge colors
    std::vector<wl::Color> sigma(edges);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::vector<wl::Color> pool(sigma.begin(), sigma.end());
    for (std::size_t i = pool.size(); i > 1; --i) {
        std::swap(pool[i - 1], pool[rng.next_below(i)]);
    }
    for (std::size_t i = 0; i + 1 < pool.size();) {
        if (rng.next_bool()) {
            sigma[pool[i]] = pool[i + 1];
            sigma[pool[i + 1]] = pool[i];
            i += 2;
        } else {
            sigma[pool[i]] = pool[i];
            i += 1;
        }
    }
    std::vector<wl::Color> t(n * n);
    for (wl::Vertex v = 0; v < n; ++v) {
        t[static_cast<std::size_t>(v) * n + v] = static_cast<wl::Color>(rng.next_below(loops));
    }
    for (wl::Vertex u = 0; u < n; ++u) {
        for (wl::Vertex v = u + 1; v < n; ++v) {
            wl::Color c = static_cast<wl::Color>(rng.next_below(edges));
            t[static_cast<std::size_t>(u) * n + v] = static_cast<wl::Color>(loops + c);
            t[static_cast<std::size_t>(v) * n + u] = static_cast<wl::Color>(loops + sigma[c]);
        }
    }
    return wl::canonical_renumber(wl::ColoredGraph(n, std::move(t)));
}

wl::ColoredGraph random_refinement(const wl::ColoredGraph& g, wl::Xorshift64Star& rng,
                                   std::size_t max_splits) {
    wl::ColoredGraph h = g;
    const std::size_t splits = 1 + rng.next_below(max_splits);
    for (std::size_t i = 0; i < splits; ++i) {
        if (h.discrete_partition()) break;
        h = wl::split_random_class(h, rng.next());
    }
    return h;
}

wl::ColoredGraph merge_sibling_classes(const wl::ColoredGraph& coarse,
                                       const wl::ColoredGraph& fine, wl::Xorshift64Star& rng) {
    const std::size_t n = fine.size();
    // children per coarse class
    std::map<wl::Color, std::set<wl::Color>> children;
    for (std::size_t i = 0; i < n * n; ++i) {
        children[coarse.table()[i]].insert(fine.table()[i]);
    }
    std::vector<std::pair<wl::Color, wl::Color>> mergeable;  // two children of one parent
    for (const auto& [parent, kids] : children) {
        if (kids.size() < 2) continue;
        std::vector<wl::Color> ks(kids.begin(), kids.end());
        std::size_t a = rng.next_below(ks.size());
        std::size_t b = rng.next_below(ks.size() - 1);
        if (b >= a) ++b;
        mergeable.emplace_back(ks[a], ks[b]);
    }
    if (mergeable.empty()) return fine;
    auto [c1, c2] = mergeable[rng.next_below(mergeable.size())];

    // union-find over fine colors; close the merge under the converse map
    std::vector<wl::Color> parent(fine.palette_size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](wl::Color x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](wl::Color a, wl::Color b) { parent[find(a)] = find(b); };
    unite(c1, c2);
    if (fine.converse_equivalent()) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (wl::Color c = 0; c < fine.palette_size(); ++c) {
                wl::Color r = find(c);
                wl::Color cr = find(fine.converse_color(c));
                wl::Color rr = find(fine.converse_color(r));
                if (cr != rr) {
                    unite(cr, rr);
                    changed = true;
                }
            }
        }
    }
    std::vector<wl::Color> t(fine.table());
    for (auto& c : t) c = find(c);
    return wl::canonical_renumber(wl::ColoredGraph(n, std::move(t)));
}

std::vector<wl::Vertex> random_permutation(std::size_t n, wl::Xorshift64Star& rng) {
    std::vector<wl::Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = n; i > 1; --i) {
        std::swap(perm[i - 1], perm[rng.next_below(i)]);
    }
    return perm;
}

std::vector<std::vector<std::pair<wl::Vertex, wl::Vertex>>> nonisomorphic_graphs(std::size_t n) {
    if (n > 7) throw std::invalid_argument("nonisomorphic_graphs: n too large");
    std::vector<std::pair<wl::Vertex, wl::Vertex>> pairs;
    for (wl::Vertex u = 0; u < n; ++u)
        for (wl::Vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    const std::size_t m = pairs.size();

    // pair index permutations induced by vertex permutations
    std::vector<std::vector<std::size_t>> maps;
    std::vector<wl::Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::map<std::pair<wl::Vertex, wl::Vertex>, std::size_t> index;
    for (std::size_t i = 0; i < m; ++i) index[pairs[i]] = i;
    do {
        std::vector<std::size_t> pm(m);
        for (std::size_t i = 0; i < m; ++i) {
            wl::Vertex a = perm[pairs[i].first], b = perm[pairs[i].second];
            if (a > b) std::swap(a, b);
            pm[i] = index[{a, b}];
        }
        maps.push_back(std::move(pm));
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::set<std::uint64_t> canon;
    for (std::uint64_t mask = 0; mask < (1ull << m); ++mask) {
        std::uint64_t best = ~0ull;
        for (const auto& pm : maps) {
            std::uint64_t img = 0;
            for (std::size_t i = 0; i < m; ++i)
                if (mask >> i & 1) img |= 1ull << pm[i];
            best = std::min(best, img);
        }
        canon.insert(best);
    }
    std::vector<std::vector<std::pair<wl::Vertex, wl::Vertex>>> out;
    for (std::uint64_t mask : canon) {
        std::vector<std::pair<wl::Vertex, wl::Vertex>> edges;
        for (std::size_t i = 0; i < m; ++i)
            if (mask >> i & 1) edges.push_back(pairs[i]);
        out.push_back(std::move(edges));
    }
    return out;
}

}  // namespace testutil
