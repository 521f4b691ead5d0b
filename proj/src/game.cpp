#include "wl/game.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "wl/rng.hpp"

namespace wl {

const char* to_string(P1Strategy s) {
    return s == P1Strategy::WlStep ? "wl-step" : "random-split";
}
const char* to_string(P2Strategy s) {
    return s == P2Strategy::Stabilize ? "stabilize" : "aux-guided";
}
std::optional<P1Strategy> p1_from_string(std::string_view s) {
    if (s == "wl-step") return P1Strategy::WlStep;
    if (s == "random-split") return P1Strategy::RandomSplit;
    return std::nullopt;
}
std::optional<P2Strategy> p2_from_string(std::string_view s) {
    if (s == "stabilize") return P2Strategy::Stabilize;
    if (s == "aux-guided") return P2Strategy::AuxGuided;
    return std::nullopt;
}

GameState::GameState(ColoredGraph start, GameConfig cfg) : config_(cfg) {
    tracker_ = register_history(std::move(tracker_), start, config_.threshold);
    history_.push_back(std::move(start));
}

const ColoredGraph& GameState::stabilization() const {
    if (!stable_cache_) {
        stable_cache_ = stabilize(current(), config_.variant).stable_graph;
    }
    return *stable_cache_;
}

void GameState::push_graph(ColoredGraph g) {
    const auto& prev = history_.back();
    if (!coarser_or_equal(compare(prev, g))) {
        throw std::logic_error("game: a history entry must refine its predecessor");
    }
    vertex_splits_ += static_cast<int>(g.vertex_class_count() - prev.vertex_class_count());
    tracker_ = register_history(std::move(tracker_), g, config_.threshold);
    history_.push_back(std::move(g));
    stable_cache_.reset();
    const int n = static_cast<int>(current().size());
    if (vertex_splits_ > std::max(0, n - 1)) {
        throw std::logic_error("game: vertex class splits exceeded n-1");
    }
}

GameState start_game(const ColoredGraph& g, GameConfig cfg) {
    auto rep = validate(g);
    if (!rep.loop_edge_disjoint) {
        throw PreconditionError("game: start graph has clashing loop/edge colors", rep);
    }
    if (cfg.variant != RefinementVariant::ConverseAware && !rep.converse_equivalent) {
        throw PreconditionError("game: start graph is not converse-equivalent", rep);
    }
    return GameState(g, cfg);
}

GameState apply_p1_move(GameState s, const ColoredGraph& g2) {
    if (s.next_player() != 1) throw std::invalid_argument("game: it is not Player 1's turn");
    if (s.over()) throw std::invalid_argument("game: the game is over");
    auto rep = validate(g2);
    if (!rep.loop_edge_disjoint) {
        throw PreconditionError("game: Player 1 move has clashing loop/edge colors", rep);
    }
    if (s.config().variant != RefinementVariant::ConverseAware && !rep.converse_equivalent) {
        throw PreconditionError("game: Player 1 move must stay converse-equivalent", rep);
    }
    if (compare(s.current(), g2) != RefinementOrder::StrictlyCoarser) {
        throw std::invalid_argument("game: Player 1 must play a proper refinement");
    }
    s.push_graph(g2);
    s.add_cost(1);
    s.set_next_player(2);
    return s;
}

GameState apply_p2_move(GameState s, const ColoredGraph& g2) {
    if (s.next_player() != 2) throw std::invalid_argument("game: it is not Player 2's turn");
    if (!coarser_or_equal(compare(s.current(), g2))) {
        throw std::invalid_argument("game: Player 2 move must refine the current graph");
    }
    // min_wl_cover also validates the lower end of the sandwich: a target
    // finer than the stabilization is rejected there
    const int cost = min_wl_cover(s.current(), g2, s.config().variant);
    s.push_graph(g2);
    s.add_cost(cost);
    s.set_next_player(1);
    return s;
}

namespace {

// Splits one class of g into two nonempty parts, mirrored on the converse
// class so the result stays converse-equivalent.
ColoredGraph random_split_impl(const ColoredGraph& g, Xorshift64Star& rng) {
    const std::size_t n = g.size();
    auto parts = summarize(g);
    std::vector<const ColorClass*> candidates;
    for (const auto& cls : parts.classes) {
        if (cls.members.size() >= 2) candidates.push_back(&cls);
    }
    if (candidates.empty()) {
        throw std::invalid_argument("random-split: the partition is already discrete");
    }
    const ColorClass& cls = *candidates[rng.next_below(candidates.size())];
    const Color conv = g.converse_equivalent() ? g.converse_color(cls.color) : cls.color;

    std::vector<Color> t(g.table());
    const Color fresh = static_cast<Color>(g.palette_size());
    auto assign = [&](PairRef p, Color c) { t[static_cast<std::size_t>(p.u) * n + p.v] = c; };

    // a nonempty proper subset of the given items, one random bit per item
    auto pick_subset = [&rng](std::size_t count) {
        std::vector<char> in(count);
        for (;;) {
            std::size_t picked = 0;
            for (auto& b : in) picked += (b = rng.next_bool());
            if (picked > 0 && picked < count) return in;
        }
    };

    if (cls.is_vertex_class || conv != cls.color) {
        // any nonempty proper subset works; mirror it on the converse class
        auto in = pick_subset(cls.members.size());
        for (std::size_t i = 0; i < cls.members.size(); ++i) {
            if (!in[i]) continue;
            assign(cls.members[i], fresh);
            if (conv != cls.color) assign({cls.members[i].v, cls.members[i].u}, fresh + 1);
        }
    } else {
        // self-converse edge class: split whole reversal orbits, or split a
        // single orbit by direction
        std::vector<PairRef> orbits;
        std::set<std::pair<Vertex, Vertex>> seen;
        for (const auto& m : cls.members) {
            if (seen.count({m.v, m.u})) continue;
            seen.insert({m.u, m.v});
            orbits.push_back(m);
        }
        if (orbits.size() >= 2) {
            auto in = pick_subset(orbits.size());
            for (std::size_t i = 0; i < orbits.size(); ++i) {
                if (!in[i]) continue;
                assign(orbits[i], fresh);
                assign({orbits[i].v, orbits[i].u}, fresh);
            }
        } else {
            // exactly one orbit {(u,v),(v,u)}: separate the two directions
            assign(orbits.front(), fresh);
        }
    }
    return canonical_renumber(ColoredGraph(n, std::move(t)));
}

}  // namespace

ColoredGraph split_random_class(const ColoredGraph& g, std::uint64_t seed) {
    Xorshift64Star rng(seed);
    return random_split_impl(g, rng);
}

ColoredGraph strategy_p1(const GameState& s, P1Strategy kind, std::uint64_t seed) {
    if (s.over()) throw std::invalid_argument("strategy: no Player 1 move exists");
    Xorshift64Star rng(seed);
    if (kind == P1Strategy::WlStep) {
        ColoredGraph next = refine_step(s.current(), s.config().variant);
        if (next.palette_size() != s.current().palette_size()) return next;
        // stable but not discrete: fall back to a random split
    }
    return random_split_impl(s.current(), rng);
}

std::size_t aux_loop_cap(std::size_t n, const ThresholdConfig& threshold) {
    const double t = threshold.at(n);
    return 8 * n * (1ull << static_cast<std::size_t>(std::ceil(t))) + 64;
}

namespace {

struct AuxLoop {
    ColoredGraph graph;
    HistoryTracker tracker;
    int cleanup_steps = 0;
    int refine_iterations = 0;
    std::vector<ColoredGraph> intermediates;

    AuxLoop(const ColoredGraph& g, HistoryTracker t) : graph(g), tracker(std::move(t)) {}

    void note(const ColoredGraph& g, const ThresholdConfig& cfg) {
        tracker = register_history(std::move(tracker), g, cfg);
        intermediates.push_back(g);
    }

    // One turn: clean up, then refine+clean until the aux graph is
    // triangle-stable. `on_step` observes the aux graph at each guard
    // evaluation.
    template <typename OnStep>
    void run(const GameConfig& cfg, OnStep on_step) {
        const std::size_t cap = aux_loop_cap(graph.size(), cfg.threshold);
        auto clean = [&] {
            CleanupResult c = ccu(graph, cfg.variant);
            cleanup_steps += c.clean_up_steps;
            for (auto& inter : c.trail) note(inter, cfg.threshold);
            graph = std::move(c.graph);
        };
        clean();
        std::size_t rounds = 0;
        for (;;) {
            AuxGraph aux = build_aux(graph, tracker);
            const bool stable = is_triangle_stable(aux);
            on_step(aux, stable);
            if (stable) break;
            if (++rounds > cap) {
                throw LoopCapExceeded("aux-guided loop exceeded its cap of " +
                                      std::to_string(cap) + " rounds (n=" +
                                      std::to_string(graph.size()) + ")");
            }
            graph = refine_step(graph, cfg.variant);
            ++refine_iterations;
            note(graph, cfg.threshold);
            clean();
        }
    }
};

}  // namespace

P2Turn strategy_p2(const GameState& s, P2Strategy kind) {
    if (kind == P2Strategy::Stabilize) {
        return {s.stabilization(), 0, 0, {}};
    }
    AuxLoop loop(s.current(), s.tracker());
    loop.run(s.config(), [](const AuxGraph&, bool) {});
    if (!loop.intermediates.empty() && loop.intermediates.back() == loop.graph) {
        loop.intermediates.pop_back();  // the result itself is pushed by apply_p2_move
    }
    return {std::move(loop.graph), loop.cleanup_steps, loop.refine_iterations,
            std::move(loop.intermediates)};
}

GameTranscript run_game(const ColoredGraph& g, P1Strategy p1, P2Strategy p2, std::uint64_t seed,
                        GameConfig cfg) {
    GameState s = start_game(g, cfg);
    GameTranscript tr;
    tr.n = g.size();
    tr.iterations_equivalent = stabilize(s.current(), cfg.variant).iterations;

    // the aux-guided loop's budget is for the whole game, not one turn
    const std::size_t game_round_cap = aux_loop_cap(g.size(), cfg.threshold);
    std::size_t aux_rounds = 0;
    std::uint64_t move_index = 0;
    while (!s.over()) {
        if (s.next_player() == 1) {
            ColoredGraph g2 = strategy_p1(s, p1, seed * 0x9e3779b97f4a7c15ull + ++move_index);
            const char* kind =
                p1 == P1Strategy::WlStep ? "p1-wl-step" : "p1-split";
            s = apply_p1_move(std::move(s), g2);
            tr.moves.push_back({1, kind, 1,
                                {s.current().vertex_class_count(), s.current().edge_class_count()},
                                partition_hash(s.current())});
        } else if (p2 == P2Strategy::Stabilize) {
            P2Turn turn = strategy_p2(s, p2);
            const int before = s.total_cost();
            s = apply_p2_move(std::move(s), turn.result);
            tr.moves.push_back({2, "p2-stabilize", s.total_cost() - before,
                                {s.current().vertex_class_count(), s.current().edge_class_count()},
                                partition_hash(s.current())});
        } else {
            P2Turn turn = strategy_p2(s, p2);
            aux_rounds += static_cast<std::size_t>(turn.loop_rounds);
            if (aux_rounds > game_round_cap) {
                throw LoopCapExceeded("aux-guided loop exceeded its per-game cap of " +
                                      std::to_string(game_round_cap) + " rounds");
            }
            // the move's cost is the cover count from the graph Player 2 was
            // given, not from the clean-up intermediates
            const int cover = min_wl_cover(s.current(), turn.result, cfg.variant);
            if (turn.cleanup_steps > 0) {
                // clean-up costs ride along with the move, 2 per step
                for (auto& inter : turn.intermediates) {
                    s.push_graph(std::move(inter));
                }
                s.add_cost(2 * turn.cleanup_steps);
                tr.moves.push_back({2, "cleanup", 2 * turn.cleanup_steps,
                                    {s.current().vertex_class_count(),
                                     s.current().edge_class_count()},
                                    partition_hash(s.current())});
            }
            s.push_graph(turn.result);
            s.add_cost(cover);
            s.set_next_player(1);
            tr.moves.push_back({2, "p2-aux-guided", cover,
                                {s.current().vertex_class_count(), s.current().edge_class_count()},
                                partition_hash(s.current())});
        }
    }
    tr.total_cost = s.total_cost();
    tr.final_graph = s.current();
    tr.vertex_splits = s.vertex_split_count();
    return tr;
}

AuxTraceResult run_aux_loop(const ColoredGraph& g, GameConfig cfg,
                            const HistoryTracker* seed_tracker) {
    auto rep = validate(g);
    if (!rep.loop_edge_disjoint) {
        throw PreconditionError("aux loop: input has clashing loop/edge colors", rep);
    }
    if (cfg.variant != RefinementVariant::ConverseAware && !rep.converse_equivalent) {
        throw PreconditionError("aux loop: input is not converse-equivalent", rep);
    }
    HistoryTracker tracker = seed_tracker ? *seed_tracker : HistoryTracker{};
    tracker = register_history(std::move(tracker), g, cfg.threshold);
    AuxLoop loop(g, std::move(tracker));
    AuxTraceResult res;
    loop.run(cfg, [&](const AuxGraph& aux, bool stable) {
        AuxTraceStep step;
        step.graph = loop.graph;
        step.aux = aux;
        step.stable = stable;
        if (!res.steps.empty()) {
            step.containment_checked = true;
            step.containment_holds = aux_contains(aux, triangle_complete(res.steps.back().aux));
        }
        res.steps.push_back(std::move(step));
    });
    res.final_graph = std::move(loop.graph);
    res.final_tracker = std::move(loop.tracker);
    res.refinement_iterations = loop.refine_iterations;
    res.cleanup_steps = loop.cleanup_steps;
    return res;
}

}  // namespace wl
