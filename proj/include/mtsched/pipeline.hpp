#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mtsched/bench.hpp"
#include "mtsched/io.hpp"

namespace mtsched {

// Command-level plumbing shared by the CLI and the test suites. Every command
// is deterministic for a fixed config (including the rng seed).

struct AffinityCommand {
    std::filesystem::path profiles_path;
    std::filesystem::path out_path;
};

struct AffinityOutcome {
    std::size_t num_tasks = 0;
    std::size_t num_branch_points = 0;
    std::size_t num_samples = 0;
    DegenerateStats degenerate;
};

AffinityOutcome run_affinity(const AffinityCommand& command);

struct GraphgenCommand {
    std::filesystem::path profiles_path;  // either profiles_path or affinity_path
    std::filesystem::path affinity_path;
    std::filesystem::path arch_path;
    int branch_points = 3;
    std::vector<std::int64_t> budgets;  // empty: log-spaced default grid
    std::size_t budget_count = 32;
    SolverChoice solver = SolverChoice::Auto;
    int exact_cap = kDefaultExactCap;
    GaParams ga;
    std::size_t enumeration_cap = kDefaultEnumerationCap;
    std::filesystem::path precedence_path;   // optional
    std::filesystem::path conditional_path;  // optional
    std::filesystem::path out_dir;
};

struct GraphgenOutcome {
    std::size_t num_graphs = 0;
    GraphScoreRecord selected;
    std::filesystem::path scores_path;
    std::filesystem::path tradeoff_path;
    std::filesystem::path selected_path;
    std::vector<std::string> warnings;
};

GraphgenOutcome run_graphgen(const GraphgenCommand& command);

struct OrderCommand {
    std::filesystem::path cost_matrix_path;  // either an explicit matrix ...
    std::filesystem::path graph_path;        // ... or a graph plus arch costs
    std::filesystem::path arch_path;
    std::filesystem::path precedence_path;   // optional
    std::filesystem::path conditional_path;  // optional
    Objective objective = Objective::OpenPath;
    SolverChoice solver = SolverChoice::Auto;
    int exact_cap = kDefaultExactCap;
    GaParams ga;
    std::filesystem::path out_path;
};

struct OrderOutcome {
    OrderingSolution solution;
    std::vector<std::string> warnings;
};

OrderOutcome run_order(const OrderCommand& command);

struct TradeoffCommand {
    std::filesystem::path scores_path;
    std::vector<std::int64_t> budgets;
    std::size_t budget_count = 32;
    std::filesystem::path out_path;
    std::filesystem::path selected_out_path;  // optional
};

struct TradeoffOutcome {
    TradeoffCurve curve;
    GraphScoreRecord selected;
};

TradeoffOutcome run_tradeoff(const TradeoffCommand& command);

// Scores graphs by variety, model size and optimal-order execution cost
// (exact solver up to `exact_cap` tasks, genetic above).
std::vector<GraphScoreRecord> score_graphs(const std::vector<TaskGraph>& graphs,
                                           const AffinityTensor& affinity,
                                           const BranchPointConfig& cfg,
                                           const BlockCostProfile& costs,
                                           const std::vector<std::pair<int, int>>& precedence,
                                           const std::vector<ConditionalArc>& conditional,
                                           SolverChoice solver, int exact_cap,
                                           const GaParams& ga);

} // namespace mtsched
