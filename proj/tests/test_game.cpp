#include "doctest.h"

#include "wl/cleanup.hpp"
#include "wl/encode.hpp"
#include "wl/game.hpp"
#include "wl/generators.hpp"
#include "wl/io.hpp"
#include "wl/rng.hpp"

#include "support/instances.hpp"

using namespace wl;

TEST_CASE("start_game: discrete inputs are over immediately") {
    GameState s = start_game(ColoredGraph::discrete(3));
    CHECK(s.over());
    CHECK(s.total_cost() == 0);

    GameState single = start_game(ColoredGraph(1, {0}));
    CHECK(single.over());

    GameState open = start_game(ColoredGraph::uniform(4));
    CHECK_FALSE(open.over());
    CHECK(open.next_player() == 1);
}

TEST_CASE("start_game rejects invalid colorings") {
    ColoredGraph clash(2, {0, 0, 1, 1});
    CHECK_THROWS_AS(start_game(clash), PreconditionError);
    ColoredGraph gap = generate({.family = Family::ConverseGap, .t = 3});
    CHECK_THROWS_AS(start_game(gap), PreconditionError);
    // the 4-tuple variant accepts it
    CHECK_NOTHROW(start_game(gap, {.variant = RefinementVariant::ConverseAware}));
}

TEST_CASE("apply_p1_move enforces proper refinement") {
    GameState s = start_game(ColoredGraph::uniform(4));
    CHECK_THROWS_AS(apply_p1_move(s, s.current()), std::invalid_argument);  // not proper
    CHECK_THROWS_AS(apply_p1_move(s, ColoredGraph::uniform(4)), std::invalid_argument);

    ColoredGraph g2 = split_random_class(s.current(), 7);
    GameState after = apply_p1_move(std::move(s), g2);
    CHECK(after.total_cost() == 1);
    CHECK(after.next_player() == 2);
    CHECK(after.history().size() == 2);
    // refining back to something coarser is rejected
    CHECK_THROWS_AS(apply_p1_move(std::move(after), ColoredGraph::uniform(4)),
                    std::invalid_argument);
}

TEST_CASE("apply_p2_move: sandwich legality and costs") {
    ColoredGraph g = generate({.family = Family::Path, .n = 6});
    GameState s = start_game(g);
    ColoredGraph g1 = refine_step(g, RefinementVariant::Counting);
    s = apply_p1_move(std::move(s), g1);

    SUBCASE("returning the input is free") {
        ColoredGraph same = s.current();
        GameState after = apply_p2_move(std::move(s), same);
        CHECK(after.total_cost() == 1);  // only the p1 move
        CHECK(after.next_player() == 1);
    }
    SUBCASE("returning the stabilization costs the remaining iterations") {
        ColoredGraph stable = s.stabilization();
        GameState after = apply_p2_move(std::move(s), stable);
        CHECK(after.total_cost() == 2);  // p1 cost 1, P6 stabilizes in 2, one already done
    }
    SUBCASE("anything finer than the stabilization is rejected") {
        if (!s.stabilization().discrete_partition()) {
            CHECK_THROWS_AS(apply_p2_move(std::move(s), ColoredGraph::discrete(6)),
                            std::invalid_argument);
        }
    }
}

TEST_CASE("split_random_class: deterministic, proper, converse-safe") {
    Xorshift64Star rng(321);
    for (int trial = 0; trial < 40; ++trial) {
        ColoredGraph g = testutil::random_converse_equivalent(2 + rng.next_below(5), rng);
        if (g.discrete_partition()) continue;
        const std::uint64_t seed = rng.next();
        ColoredGraph a = split_random_class(g, seed);
        ColoredGraph b = split_random_class(g, seed);
        CHECK(a == b);
        CHECK(compare(g, a) == RefinementOrder::StrictlyCoarser);
        CHECK(a.converse_equivalent());
        CHECK(a.loop_edge_disjoint());
    }
}

TEST_CASE("strategy_p1: wl-step plays the refinement, falls back when stable") {
    ColoredGraph g = generate({.family = Family::Path, .n = 4});
    GameState s = start_game(g);
    ColoredGraph move = strategy_p1(s, P1Strategy::WlStep, 1);
    CHECK(compare(move, refine_step(g, RefinementVariant::Counting)) == RefinementOrder::Equal);

    // stable but not discrete: wl-step must still produce a proper refinement
    ColoredGraph stable = stabilize(g, RefinementVariant::Counting).stable_graph;
    if (!stable.discrete_partition()) {
        GameState st = start_game(stable);
        ColoredGraph fallback = strategy_p1(st, P1Strategy::WlStep, 2);
        CHECK(compare(stable, fallback) == RefinementOrder::StrictlyCoarser);
    }
}

TEST_CASE("strategy_p2: stabilize and the aux-guided loop on stable input") {
    ColoredGraph g = ColoredGraph::uniform(4);
    GameState s = start_game(g);
    s = apply_p1_move(std::move(s), split_random_class(g, 3));

    P2Turn stab = strategy_p2(s, P2Strategy::Stabilize);
    CHECK(coarser_or_equal(compare(s.current(), stab.result)));

    // on an already stable, cleaned-up current graph the loop returns it
    // unchanged: the aux graph of a stable cleaned graph is triangle-stable
    ColoredGraph stable = s.stabilization();
    GameState st = start_game(stable, {.threshold = ThresholdConfig::fixed(3.0)});
    st.set_next_player(2);
    P2Turn aux = strategy_p2(st, P2Strategy::AuxGuided);
    CHECK(compare(aux.result, stable) == RefinementOrder::Equal);
}

TEST_CASE("run_game: wl-step vs stabilize costs at least the iteration count") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        ColoredGraph g = generate({.family = Family::Gnp, .n = 10, .p = 0.5, .seed = seed});
        GameTranscript t = run_game(g, P1Strategy::WlStep, P2Strategy::Stabilize, seed);
        CHECK(t.total_cost >= t.iterations_equivalent);
        CHECK(t.final_graph.discrete_partition());
        CHECK(t.vertex_splits <= static_cast<int>(g.size()) - 1);
        // history monotone: costs add up
        int sum = 0;
        for (const auto& m : t.moves) sum += m.cost;
        CHECK(sum == t.total_cost);
    }
}

TEST_CASE("run_game: random-split vs aux-guided terminates discrete") {
    ColoredGraph g = generate(
        {.family = Family::BoundedColorClass, .n = 10, .p = 0.5, .t = 3, .seed = 5});
    GameConfig cfg{.variant = RefinementVariant::Counting,
                   .threshold = ThresholdConfig::fixed(3.0)};
    GameTranscript t = run_game(g, P1Strategy::RandomSplit, P2Strategy::AuxGuided, 5, cfg);
    CHECK(t.final_graph.discrete_partition());
    CHECK(t.vertex_splits <= 9);
    CHECK(t.total_cost > 0);
}

TEST_CASE("run_game on a discrete graph produces an empty transcript") {
    GameTranscript t = run_game(ColoredGraph::discrete(3), P1Strategy::RandomSplit,
                                P2Strategy::Stabilize, 1);
    CHECK(t.moves.empty());
    CHECK(t.total_cost == 0);
}

TEST_CASE("aux loop cap formula") {
    CHECK(aux_loop_cap(24, ThresholdConfig::fixed(3.0)) == 8 * 24 * 8 + 64);
    CHECK(aux_loop_cap(16, ThresholdConfig::default_rule()) == 8 * 16 * 4 + 64);
}

TEST_CASE("run_aux_loop: inputs without small classes give an empty stable aux") {
    // uniform K8 has one vertex class of size 8, large under any sensible
    // threshold, so the tracker stays empty and the loop exits at once
    auto res = run_aux_loop(ColoredGraph::uniform(8));
    REQUIRE(res.steps.size() == 1);
    CHECK(res.steps.front().stable);
    CHECK(res.steps.front().aux.node_count() == 0);
    CHECK(res.steps.front().aux.edge_count() == 0);
    CHECK(res.final_tracker.size() == 0);
}

TEST_CASE("run_aux_loop: stable inputs make one stable dump") {
    ColoredGraph g = generate(
        {.family = Family::BoundedColorClass, .n = 8, .p = 0.5, .t = 2, .seed = 9});
    ColoredGraph stable = stabilize(g, RefinementVariant::Counting).stable_graph;
    auto res = run_aux_loop(stable, {.threshold = ThresholdConfig::fixed(3.0)});
    CHECK(res.steps.size() == 1);
    CHECK(res.steps.front().stable);
    CHECK(res.refinement_iterations == 0);
    CHECK(compare(res.final_graph, stable) == RefinementOrder::Equal);
}

TEST_CASE("run_aux_loop: a matching chain forces a refinement round") {
    // classes A={0,1}, B={2,3}, D={4,5} with matchings A-D and B-D: the
    // clean-up cannot separate the A-B pairs (all degrees agree), but the
    // subset links A->D and B->D share lower targets, so the aux graph is
    // not triangle-stable until one refinement composes the matchings
    EdgeList edges{{0, 4}, {1, 5}, {2, 4}, {3, 5}};
    std::vector<int> labels{0, 0, 1, 1, 2, 2};
    ColoredGraph g = encode_undirected(6, edges, labels);
    GameConfig cfg{.variant = RefinementVariant::Counting,
                   .threshold = ThresholdConfig::fixed(3.0)};
    auto res = run_aux_loop(g, cfg);
    REQUIRE(res.steps.size() == 2);
    CHECK_FALSE(res.steps.front().stable);
    CHECK(res.steps.back().stable);
    CHECK(res.refinement_iterations == 1);
    CHECK(res.steps.back().containment_holds);
    CHECK(res.steps.back().aux.edge_count() > res.steps.front().aux.edge_count());
    // the refinement separated matched from unmatched cross pairs
    CHECK(res.final_graph.edge_class_count() > ccu(g, cfg.variant).graph.edge_class_count());
}

TEST_CASE("run_aux_loop: containment holds along the loop") {
    for (std::uint64_t seed : {11ull, 12ull, 13ull}) {
        ColoredGraph g = generate(
            {.family = Family::BoundedColorClass, .n = 10, .p = 0.5, .t = 2, .seed = seed});
        auto res = run_aux_loop(g, {.threshold = ThresholdConfig::fixed(3.0)});
        REQUIRE_FALSE(res.steps.empty());
        CHECK(res.steps.back().stable);
        for (const auto& step : res.steps) {
            if (step.containment_checked) CHECK(step.containment_holds);
        }
    }
}

TEST_CASE("potential gains at least the threshold on large-class row refinements") {
    // instrumented over game runs: between consecutive cleaned-up graphs,
    // if some vertex of a large class had its out-row partition strictly
    // refined and no large class split, the potential must grow by >= t(n)
    auto row_count = [](const ColoredGraph& g, Vertex v) {
        std::vector<Color> row(g.out_row(v).begin(), g.out_row(v).end());
        std::sort(row.begin(), row.end());
        return static_cast<std::size_t>(std::unique(row.begin(), row.end()) - row.begin());
    };
    ThresholdConfig cfg = ThresholdConfig::default_rule();
    int fired = 0;
    std::vector<ColoredGraph> starts;
    for (std::size_t n : {8, 12, 16, 24, 32}) {
        starts.push_back(generate({.family = Family::Cycle, .n = n}));
        starts.push_back(generate({.family = Family::Path, .n = n}));
    }
    for (const ColoredGraph& g : starts) {
        // refinement-step moves keep symmetric vertex classes whole while
        // their out-rows refine, which is where the premise fires
        ColoredGraph cleaned = ccu(g, RefinementVariant::Counting).graph;
        for (int move = 0; move < 20; ++move) {
            ColoredGraph stepped = refine_step(cleaned, RefinementVariant::Counting);
            if (stepped.palette_size() == cleaned.palette_size()) break;
            ColoredGraph next = ccu(stepped, RefinementVariant::Counting).graph;
            const double t = cfg.at(cleaned.size());
            auto large = classify_classes(cleaned, cfg).large;
            bool large_split = false;
            for (const auto& cls : large) {
                Color first = next.loop_color(cls.members.front());
                for (Vertex v : cls.members) {
                    if (next.loop_color(v) != first) large_split = true;
                }
            }
            bool large_row_refined = false;
            for (const auto& cls : large) {
                for (Vertex v : cls.members) {
                    if (row_count(next, v) > row_count(cleaned, v)) large_row_refined = true;
                }
            }
            if (large_row_refined && !large_split) {
                const auto gain =
                    static_cast<double>(color_potential(next) - color_potential(cleaned));
                CHECK(gain >= t);
                ++fired;
            }
            cleaned = std::move(next);
        }
    }
    CHECK(fired > 5);
}

TEST_CASE("transcript serialization carries moves and summary") {
    ColoredGraph g = generate({.family = Family::Gnp, .n = 8, .p = 0.5, .seed = 2});
    GameTranscript t = run_game(g, P1Strategy::WlStep, P2Strategy::Stabilize, 2);
    auto j = transcript_to_json(t);
    CHECK(j.contains("moves"));
    CHECK(j["summary"]["total_cost"].get<int>() == t.total_cost);
    CHECK(j["summary"]["n"].get<std::size_t>() == 8);
    CHECK(j["moves"].size() == t.moves.size());
}
