#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mtsched/affinity.hpp"

namespace mtsched {

using Group = std::vector<int>;        // sorted task indices
using Partition = std::vector<Group>;  // canonical: groups ordered by smallest member

// Sorts members ascending and groups by smallest member.
Partition canonicalized(Partition partition);

// True iff every group of `fine` is contained in some group of `coarse`.
bool refines(const Partition& fine, const Partition& coarse);

// A chain of successively refining partitions of the task set, one per branch
// point. partitions[0] refines the trivial all-tasks group; every task
// additionally owns a private head after the last branch point.
struct TaskGraph {
    int num_tasks = 0;
    std::vector<Partition> partitions;

    int depth() const { return static_cast<int>(partitions.size()); }

    // Throws InputError if any level is not a valid canonical partition of
    // {0..n-1} or the refinement property fails.
    void validate() const;

    // Compact text form, e.g. "0,1|2;0|1|2" (levels joined by ';').
    std::string canonical_key() const;

    // Index of the group containing `task` at branch level `branch`.
    std::size_t group_index(int branch, int task) const;

    static TaskGraph fully_shared(int num_tasks, int depth);
    static TaskGraph all_singletons(int num_tasks, int depth);
};

// Branch-point layer positions within the common architecture. Branch point d
// sits in front of layer branch_layers[d]; the final layer is every task's
// private head.
struct BranchPointConfig {
    std::vector<int> branch_layers;  // strictly increasing, all < num_layers
    int num_layers = 0;

    int depth() const { return static_cast<int>(branch_layers.size()); }
    void validate() const;
};

// Per-layer execution cost, load cost and parameter size of the common
// architecture; identical for all tasks.
struct BlockCostProfile {
    std::vector<double> exec_cost;
    std::vector<double> load_cost;
    std::vector<std::int64_t> param_size;

    void validate(int num_layers) const;
};

// A span of layers owned by one task group. segment 0 is the trunk, segments
// 1..D follow the branch points, segment D+1 is a per-task head.
struct Block {
    int segment = 0;
    Group tasks;
    int layer_begin = 0;
    int layer_end = 0;  // half-open
    double exec_cost = 0.0;
    double load_cost = 0.0;
    std::int64_t param_size = 0;
};

// Materializes the trunk block, one block per (segment, group) pair and one
// head block per task, with summed per-layer costs.
std::vector<Block> blocks_of(const TaskGraph& graph, const BranchPointConfig& cfg,
                             const BlockCostProfile& costs);

// Average per-group maximum pairwise dissimilarity (1 - S) at one branch
// point; singleton groups contribute 0.
double variety_at_branch(const TaskGraph& graph, const AffinityTensor& affinity, int branch);

// Sum of variety_at_branch over all branch points.
double variety_score(const TaskGraph& graph, const AffinityTensor& affinity);

// Total parameter bytes over the graph's blocks; shared blocks count once.
std::int64_t model_size(const TaskGraph& graph, const BranchPointConfig& cfg,
                        const BlockCostProfile& costs);

inline constexpr std::size_t kDefaultEnumerationCap = 1000000;

// Every canonical refinement chain over n tasks and `depth` branch points,
// exactly once, sorted by canonical key. Throws CapacityError when the count
// exceeds `cap`.
std::vector<TaskGraph> enumerate_task_graphs(int num_tasks, int depth,
                                             std::size_t cap = kDefaultEnumerationCap);

} // namespace mtsched
