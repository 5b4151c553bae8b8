#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mtsched/taskgraph.hpp"

namespace mtsched {

enum class CostUnit { Time, Energy };

std::string to_string(CostUnit unit);
CostUnit cost_unit_from_string(const std::string& text);

// Task-switching costs c[i][j]: the extra load+execute cost of running task j
// right after task i. Diagonal is 0.
struct CostMatrix {
    int num_tasks = 0;
    CostUnit unit = CostUnit::Time;
    std::vector<double> entries;  // row-major n x n

    double at(int i, int j) const {
        return entries[static_cast<std::size_t>(i) * num_tasks + j];
    }
    double& at(int i, int j) { return entries[static_cast<std::size_t>(i) * num_tasks + j]; }

    static CostMatrix zero(int num_tasks, CostUnit unit = CostUnit::Time);
    void validate() const;
};

// A conditional dependency: `after` runs with probability `prob` once `before`
// has finished; the probability scales the expected switching cost.
struct ConditionalArc {
    int before = 0;
    int after = 0;
    double prob = 1.0;
};

// Load+execute cost of the blocks on task j's path that are not on task i's
// path; the shared prefix is cached and costs nothing.
double switching_cost(const TaskGraph& graph, const BranchPointConfig& cfg,
                      const BlockCostProfile& costs, int from_task, int to_task);

// All pairs via switching_cost; each unordered pair is computed once and
// mirrored, so derived matrices are symmetric to exact equality.
CostMatrix cost_matrix(const TaskGraph& graph, const BranchPointConfig& cfg,
                       const BlockCostProfile& costs, CostUnit unit = CostUnit::Time);

// Load+execute cost of every block on one task's root-to-head path.
double full_path_cost(const TaskGraph& graph, const BranchPointConfig& cfg,
                      const BlockCostProfile& costs, int task);

// Cost of executing all tasks in the given order: the first task's full path
// plus every consecutive switching cost, each weighted by its conditional
// probability when one is declared (default 1).
double total_execution_cost(const TaskGraph& graph, const BranchPointConfig& cfg,
                            const BlockCostProfile& costs, std::span<const int> order,
                            std::span<const ConditionalArc> conditionals = {});

} // namespace mtsched
