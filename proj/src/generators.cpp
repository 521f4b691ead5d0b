#include "wl/generators.hpp"

#include <stdexcept>

#include "wl/encode.hpp"
#include "wl/rng.hpp"

namespace wl {

const char* to_string(Family f) {
    switch (f) {
        case Family::Path: return "path";
        case Family::Cycle: return "cycle";
        case Family::DisjointCycles: return "disjoint-cycles";
        case Family::Gnp: return "gnp";
        case Family::BoundedColorClass: return "bounded-color-class";
        case Family::ConverseGap: return "converse-gap";
        case Family::Complete: return "complete";
    }
    return "?";
}

std::optional<Family> family_from_string(std::string_view s) {
    if (s == "path") return Family::Path;
    if (s == "cycle") return Family::Cycle;
    if (s == "disjoint-cycles" || s == "disjoint_cycles") return Family::DisjointCycles;
    if (s == "gnp") return Family::Gnp;
    if (s == "bounded-color-class" || s == "bounded_color_class")
        return Family::BoundedColorClass;
    if (s == "converse-gap" || s == "converse_gap") return Family::ConverseGap;
    if (s == "complete") return Family::Complete;
    return std::nullopt;
}

std::string FamilySpec::describe() const {
    std::string s = to_string(family);
    if (family == Family::DisjointCycles) {
        s += "[";
        for (std::size_t i = 0; i < lengths.size(); ++i) {
            if (i) s += "+";
            s += std::to_string(lengths[i]);
        }
        s += "]";
        return s;
    }
    if (family == Family::ConverseGap) return s + "(t=" + std::to_string(t) + ")";
    s += "(n=" + std::to_string(n);
    if (family == Family::Gnp || family == Family::BoundedColorClass)
        s += ",p=" + std::to_string(p);
    if (family == Family::BoundedColorClass) s += ",t=" + std::to_string(t);
    if (family == Family::Gnp || family == Family::BoundedColorClass)
        s += ",seed=" + std::to_string(seed);
    return s + ")";
}

namespace {

EdgeList seeded_gnp_edges(std::size_t n, double p, std::uint64_t seed) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("generate: p must be in [0,1]");
    Xorshift64Star rng(seed);
    EdgeList edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (rng.next_double() < p) edges.emplace_back(u, v);
    return edges;
}

ColoredGraph converse_gap(std::size_t t) {
    if (t < 2) throw std::invalid_argument("generate: converse-gap needs t >= 2");
    const std::size_t n = 2 * t;
    // loops: A-side 0, B-side 1; inside A 2, inside B 3, B->A 4,
    // A->B 5 on the circulant pattern, 6 otherwise
    std::vector<Color> tab(n * n, 6);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
            const bool ua = u < t, va = v < t;
            std::size_t i = u * n + v;
            if (u == v) tab[i] = ua ? 0 : 1;
            else if (ua && va) tab[i] = 2;
            else if (!ua && !va) tab[i] = 3;
            else if (!ua) tab[i] = 4;
            else {
                const std::size_t ai = u, bj = v - t;
                tab[i] = (ai == bj || ai == (bj + 1) % t) ? 5 : 6;
            }
        }
    }
    return canonical_renumber(ColoredGraph(n, std::move(tab)));
}

}  // namespace

ColoredGraph generate(const FamilySpec& spec) {
    switch (spec.family) {
        case Family::Path: {
            if (spec.n < 1) throw std::invalid_argument("generate: path needs n >= 1");
            EdgeList edges;
            for (Vertex v = 0; v + 1 < spec.n; ++v) edges.emplace_back(v, v + 1);
            return encode_undirected(spec.n, edges);
        }
        case Family::Cycle: {
            if (spec.n < 3) throw std::invalid_argument("generate: cycle needs n >= 3");
            EdgeList edges;
            for (Vertex v = 0; v < spec.n; ++v)
                edges.emplace_back(v, static_cast<Vertex>((v + 1) % spec.n));
            return encode_undirected(spec.n, edges);
        }
        case Family::DisjointCycles: {
            if (spec.lengths.empty()) {
                throw std::invalid_argument("generate: disjoint-cycles needs cycle lengths");
            }
            EdgeList edges;
            Vertex base = 0;
            for (std::size_t len : spec.lengths) {
                if (len < 3) throw std::invalid_argument("generate: cycle length must be >= 3");
                for (Vertex v = 0; v < len; ++v) {
                    edges.emplace_back(base + v, base + static_cast<Vertex>((v + 1) % len));
                }
                base += static_cast<Vertex>(len);
            }
            return encode_undirected(base, edges);
        }
        case Family::Gnp: {
            if (spec.n < 1) throw std::invalid_argument("generate: gnp needs n >= 1");
            return encode_undirected(spec.n, seeded_gnp_edges(spec.n, spec.p, spec.seed));
        }
        case Family::BoundedColorClass: {
            if (spec.n < 1 || spec.t < 1) {
                throw std::invalid_argument("generate: bounded-color-class needs n,t >= 1");
            }
            std::vector<int> labels(spec.n);
            for (std::size_t v = 0; v < spec.n; ++v) labels[v] = static_cast<int>(v / spec.t);
            return encode_undirected(spec.n, seeded_gnp_edges(spec.n, spec.p, spec.seed),
                                     labels);
        }
        case Family::ConverseGap:
            return converse_gap(spec.t);
        case Family::Complete: {
            if (spec.n < 1) throw std::invalid_argument("generate: complete needs n >= 1");
            EdgeList edges;
            for (Vertex u = 0; u < spec.n; ++u)
                for (Vertex v = u + 1; v < spec.n; ++v) edges.emplace_back(u, v);
            return encode_undirected(spec.n, edges);
        }
    }
    throw std::logic_error("generate: unknown family");
}

}  // namespace wl
