#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "wl/aux_graph.hpp"
#include "wl/cleanup.hpp"
#include "wl/colored_graph.hpp"
#include "wl/refine.hpp"

namespace wl {

/// Player 1 must properly refine the current coloring (cost 1 per turn);
/// Player 2 must return a graph between the current one and its
/// stabilization (cost: the number of refinement iterations needed to
/// cover her output). The game ends on the discrete partition.
enum class P1Strategy { WlStep, RandomSplit };
enum class P2Strategy { Stabilize, AuxGuided };

const char* to_string(P1Strategy s);
const char* to_string(P2Strategy s);
std::optional<P1Strategy> p1_from_string(std::string_view s);
std::optional<P2Strategy> p2_from_string(std::string_view s);

struct GameConfig {
    RefinementVariant variant = RefinementVariant::Counting;
    ThresholdConfig threshold = ThresholdConfig::default_rule();
};

struct Move {
    int player = 0;              // 1 or 2
    std::string kind;            // p1-split, p1-wl-step, p2-stabilize, p2-aux-guided, cleanup
    int cost = 0;
    std::pair<std::size_t, std::size_t> class_counts;  // after the move
    std::uint64_t graph_hash = 0;
};

class GameState {
public:
    GameState(ColoredGraph start, GameConfig cfg);

    const ColoredGraph& current() const { return history_.back(); }
    const std::vector<ColoredGraph>& history() const { return history_; }
    const HistoryTracker& tracker() const { return tracker_; }
    const GameConfig& config() const { return config_; }
    int total_cost() const { return total_cost_; }
    int next_player() const { return next_player_; }
    int vertex_split_count() const { return vertex_splits_; }
    bool over() const { return current().discrete_partition(); }

    /// Stabilization of the current graph, computed on demand and cached
    /// until the current graph changes.
    const ColoredGraph& stabilization() const;

    // internal transitions; use the free functions below
    void push_graph(ColoredGraph g);
    void add_cost(int c) { total_cost_ += c; }
    void set_next_player(int p) { next_player_ = p; }

private:
    GameConfig config_;
    std::vector<ColoredGraph> history_;
    HistoryTracker tracker_;
    int total_cost_ = 0;
    int next_player_ = 1;
    int vertex_splits_ = 0;
    mutable std::optional<ColoredGraph> stable_cache_;
};

/// Validates the start graph (structure and, for the counting/set
/// variants, converse equivalence) and opens the game with Player 1 to
/// move. A discrete start is immediately over.
GameState start_game(const ColoredGraph& g, GameConfig cfg = {});

/// Player 1 plays g2: must be valid, converse-equivalent and a proper
/// refinement of the current graph. Cost 1.
GameState apply_p1_move(GameState s, const ColoredGraph& g2);

/// Player 2 plays g2: must satisfy current >= g2 >= stabilization(current).
/// Cost: min_wl_cover(current, g2).
GameState apply_p2_move(GameState s, const ColoredGraph& g2);

/// Picks Player 1's next graph. WlStep plays one refinement iteration and
/// falls back to RandomSplit on stable (non-discrete) graphs; RandomSplit
/// splits one seeded non-singleton class into two nonempty parts, closed
/// under converse equivalence. Throws when the current graph is discrete.
ColoredGraph strategy_p1(const GameState& s, P1Strategy kind, std::uint64_t seed);

/// The random-split primitive behind strategy_p1: splits one seeded
/// non-singleton class of g into two nonempty parts and mirrors the split
/// on the converse class. The result is a proper, converse-safe refinement.
ColoredGraph split_random_class(const ColoredGraph& g, std::uint64_t seed);

struct P2Turn {
    ColoredGraph result;
    int cleanup_steps = 0;                  // total clean-up steps performed this turn
    int loop_rounds = 0;                    // refinement rounds of the aux-guided loop
    std::vector<ColoredGraph> intermediates;  // graphs produced before the result
};

/// Picks Player 2's response. Stabilize returns the stabilization.
/// AuxGuided cleans up, then alternates refinement iterations and complete
/// clean-ups until the aux graph against the game's history tracker is
/// triangle-stable.
P2Turn strategy_p2(const GameState& s, P2Strategy kind);

/// Hard cap on the aux-guided loop: 8 * n * 2^ceil(t(n)) + 64.
std::size_t aux_loop_cap(std::size_t n, const ThresholdConfig& threshold);

/// Thrown when the aux-guided loop exceeds the cap; indicates a broken
/// invariant, not a legal game state.
class LoopCapExceeded : public std::runtime_error {
public:
    explicit LoopCapExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

struct GameTranscript {
    std::vector<Move> moves;
    int total_cost = 0;
    ColoredGraph final_graph;
    int iterations_equivalent = 0;  // WL iteration count of the original input
    int vertex_splits = 0;
    std::size_t n = 0;
};

/// Alternates the two strategies from the start graph until the partition
/// is discrete. Per-move seeds derive from `seed` and the move index.
GameTranscript run_game(const ColoredGraph& g, P1Strategy p1, P2Strategy p2,
                        std::uint64_t seed, GameConfig cfg = {});

/// One standalone pass of the aux-guided loop, dumping the aux graph at
/// every stage; used by the trace command and the property suites.
struct AuxTraceStep {
    ColoredGraph graph;  // the cleaned graph the aux was built from
    AuxGraph aux;
    bool stable = false;
    bool containment_checked = false;  // step had a predecessor to compare against
    bool containment_holds = false;    // triangle completion contained in the next aux
};

struct AuxTraceResult {
    std::vector<AuxTraceStep> steps;
    ColoredGraph final_graph;
    HistoryTracker final_tracker;
    int refinement_iterations = 0;
    int cleanup_steps = 0;
};

/// `seed_tracker` carries registered classes from earlier play into the
/// loop (the standalone trace starts from an empty history otherwise).
AuxTraceResult run_aux_loop(const ColoredGraph& g, GameConfig cfg = {},
                            const HistoryTracker* seed_tracker = nullptr);

}  // namespace wl
