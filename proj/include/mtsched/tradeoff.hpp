#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mtsched/taskgraph.hpp"

namespace mtsched {

struct GraphScoreRecord {
    TaskGraph graph;
    double variety = 0.0;
    std::int64_t model_size = 0;
    double exec_cost = 0.0;
};

struct TradeoffPoint {
    std::int64_t budget = 0;
    std::size_t graph_index = 0;  // into the scored list passed to sweep()
    double variety = 0.0;
    double exec_cost = 0.0;
    double variety_norm = 0.0;
    double cost_norm = 0.0;
    bool selected = false;
};

struct TradeoffCurve {
    std::vector<TradeoffPoint> points;
    std::size_t selected_index = 0;
    std::vector<std::string> warnings;  // skipped budgets
};

// Per budget, the minimum-variety graph that fits (ties: lower exec cost,
// then canonical order); variety and cost of the selections are min-max
// normalized over the sweep. Budgets with no fitting graph are skipped with a
// warning; an empty sweep is an error.
TradeoffCurve sweep(std::span<const GraphScoreRecord> scored,
                    std::span<const std::int64_t> budgets);

// The sweep point where the two normalized trend lines come closest
// (ties: smaller budget); marks it selected and returns it.
const TradeoffPoint& select_intersection(TradeoffCurve& curve);

// Log-spaced budgets from the smallest to the largest scored model size.
std::vector<std::int64_t> default_budget_grid(std::span<const GraphScoreRecord> scored,
                                              std::size_t count = 32);

} // namespace mtsched
