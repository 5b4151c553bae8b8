#include "mtsched/costmodel.hpp"

#include <algorithm>

#include "mtsched/error.hpp"

namespace mtsched {

std::string to_string(CostUnit unit) {
    return unit == CostUnit::Time ? "time" : "energy";
}

CostUnit cost_unit_from_string(const std::string& text) {
    if (text == "time") return CostUnit::Time;
    if (text == "energy") return CostUnit::Energy;
    throw InputError("unknown cost unit '" + text + "' (expected \"time\" or \"energy\")");
}

CostMatrix CostMatrix::zero(int num_tasks, CostUnit unit) {
    CostMatrix matrix;
    matrix.num_tasks = num_tasks;
    matrix.unit = unit;
    matrix.entries.assign(static_cast<std::size_t>(num_tasks) * num_tasks, 0.0);
    return matrix;
}

void CostMatrix::validate() const {
    if (num_tasks < 1) throw InputError("cost matrix: needs at least one task");
    if (entries.size() != static_cast<std::size_t>(num_tasks) * num_tasks)
        throw InputError("cost matrix: expected " + std::to_string(num_tasks) + "x" +
                         std::to_string(num_tasks) + " entries, got " +
                         std::to_string(entries.size()));
    for (int i = 0; i < num_tasks; ++i) {
        if (at(i, i) != 0.0)
            throw InputError("cost matrix: nonzero diagonal at task " + std::to_string(i));
        for (int j = 0; j < num_tasks; ++j)
            if (at(i, j) < 0.0)
                throw InputError("cost matrix: negative cost at (" + std::to_string(i) + ", " +
                                 std::to_string(j) + ")");
    }
}

namespace {

// Blocks are identified by (segment, group-of-that-level); a task's path is
// the trunk, its group block at each level, and its head.
double block_cost(const Block& block) { return block.load_cost + block.exec_cost; }

} // namespace

double switching_cost(const TaskGraph& graph, const BranchPointConfig& cfg,
                      const BlockCostProfile& costs, int from_task, int to_task) {
    if (from_task == to_task)
        throw InputError("switching cost: from and to tasks must differ");
    const std::vector<Block> blocks = blocks_of(graph, cfg, costs);

    double total = 0.0;
    for (const Block& block : blocks) {
        const bool on_to = std::binary_search(block.tasks.begin(), block.tasks.end(), to_task);
        const bool on_from = std::binary_search(block.tasks.begin(), block.tasks.end(), from_task);
        if (on_to && !on_from) total += block_cost(block);
    }
    return total;
}

CostMatrix cost_matrix(const TaskGraph& graph, const BranchPointConfig& cfg,
                       const BlockCostProfile& costs, CostUnit unit) {
    graph.validate();
    const std::vector<Block> blocks = blocks_of(graph, cfg, costs);
    const int n = graph.num_tasks;

    // per-task path cost below each divergence level, via the block list
    CostMatrix matrix = CostMatrix::zero(n, unit);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double cost = 0.0;
            for (const Block& block : blocks) {
                const bool on_j = std::binary_search(block.tasks.begin(), block.tasks.end(), j);
                const bool on_i = std::binary_search(block.tasks.begin(), block.tasks.end(), i);
                if (on_j && !on_i) cost += block_cost(block);
            }
            matrix.at(i, j) = cost;
            matrix.at(j, i) = cost;
        }
    }
    return matrix;
}

double full_path_cost(const TaskGraph& graph, const BranchPointConfig& cfg,
                      const BlockCostProfile& costs, int task) {
    double total = 0.0;
    for (const Block& block : blocks_of(graph, cfg, costs)) {
        if (std::binary_search(block.tasks.begin(), block.tasks.end(), task))
            total += block_cost(block);
    }
    return total;
}

double total_execution_cost(const TaskGraph& graph, const BranchPointConfig& cfg,
                            const BlockCostProfile& costs, std::span<const int> order,
                            std::span<const ConditionalArc> conditionals) {
    if (order.size() != static_cast<std::size_t>(graph.num_tasks))
        throw InputError("execution cost: order must cover all " +
                         std::to_string(graph.num_tasks) + " tasks");
    std::vector<bool> seen(graph.num_tasks, false);
    for (int task : order) {
        if (task < 0 || task >= graph.num_tasks || seen[task])
            throw InputError("execution cost: order is not a permutation of the tasks");
        seen[task] = true;
    }

    auto probability = [&](int from, int to) {
        for (const ConditionalArc& arc : conditionals)
            if (arc.before == from && arc.after == to) return arc.prob;
        return 1.0;
    };

    const CostMatrix matrix = cost_matrix(graph, cfg, costs);
    double total = full_path_cost(graph, cfg, costs, order[0]);
    for (std::size_t k = 0; k + 1 < order.size(); ++k)
        total += probability(order[k], order[k + 1]) * matrix.at(order[k], order[k + 1]);
    return total;
}

} // namespace mtsched
