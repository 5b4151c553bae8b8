#include "mtsched/taskgraph.hpp"

#include <algorithm>
#include <unordered_set>

#include "mtsched/error.hpp"

namespace mtsched {

Partition canonicalized(Partition partition) {
    for (auto& group : partition) std::sort(group.begin(), group.end());
    std::sort(partition.begin(), partition.end(),
              [](const Group& a, const Group& b) { return a.front() < b.front(); });
    return partition;
}

bool refines(const Partition& fine, const Partition& coarse) {
    for (const auto& group : fine) {
        bool contained = false;
        for (const auto& super : coarse) {
            if (std::includes(super.begin(), super.end(), group.begin(), group.end())) {
                contained = true;
                break;
            }
        }
        if (!contained) return false;
    }
    return true;
}

namespace {

void validate_partition(const Partition& partition, int num_tasks, int level) {
    std::vector<bool> seen(num_tasks, false);
    int count = 0;
    int previous_first = -1;
    for (const auto& group : partition) {
        if (group.empty())
            throw InputError("task graph: empty group at level " + std::to_string(level));
        if (group.front() <= previous_first)
            throw InputError("task graph: groups out of canonical order at level " +
                             std::to_string(level));
        previous_first = group.front();
        for (std::size_t m = 0; m < group.size(); ++m) {
            const int task = group[m];
            if (task < 0 || task >= num_tasks)
                throw InputError("task graph: task index " + std::to_string(task) +
                                 " out of range at level " + std::to_string(level));
            if (m > 0 && group[m] <= group[m - 1])
                throw InputError("task graph: members out of order at level " +
                                 std::to_string(level));
            if (seen[task])
                throw InputError("task graph: task " + std::to_string(task) +
                                 " appears twice at level " + std::to_string(level));
            seen[task] = true;
            ++count;
        }
    }
    if (count != num_tasks)
        throw InputError("task graph: level " + std::to_string(level) + " covers " +
                         std::to_string(count) + " of " + std::to_string(num_tasks) + " tasks");
}

} // namespace

void TaskGraph::validate() const {
    if (num_tasks < 1) throw InputError("task graph: needs at least one task");
    if (partitions.empty()) throw InputError("task graph: needs at least one branch point");
    for (std::size_t level = 0; level < partitions.size(); ++level) {
        validate_partition(partitions[level], num_tasks, static_cast<int>(level));
        if (level > 0 && !refines(partitions[level], partitions[level - 1]))
            throw InputError("task graph: level " + std::to_string(level) +
                             " does not refine level " + std::to_string(level - 1));
    }
}

std::string TaskGraph::canonical_key() const {
    std::string key;
    for (std::size_t level = 0; level < partitions.size(); ++level) {
        if (level > 0) key += ';';
        for (std::size_t g = 0; g < partitions[level].size(); ++g) {
            if (g > 0) key += '|';
            for (std::size_t m = 0; m < partitions[level][g].size(); ++m) {
                if (m > 0) key += ',';
                key += std::to_string(partitions[level][g][m]);
            }
        }
    }
    return key;
}

std::size_t TaskGraph::group_index(int branch, int task) const {
    const Partition& partition = partitions[branch];
    for (std::size_t g = 0; g < partition.size(); ++g) {
        if (std::binary_search(partition[g].begin(), partition[g].end(), task)) return g;
    }
    throw InputError("task graph: task " + std::to_string(task) + " missing at level " +
                     std::to_string(branch));
}

TaskGraph TaskGraph::fully_shared(int num_tasks, int depth) {
    Group all(num_tasks);
    for (int t = 0; t < num_tasks; ++t) all[t] = t;
    TaskGraph graph;
    graph.num_tasks = num_tasks;
    graph.partitions.assign(depth, Partition{all});
    return graph;
}

TaskGraph TaskGraph::all_singletons(int num_tasks, int depth) {
    Partition singletons;
    for (int t = 0; t < num_tasks; ++t) singletons.push_back({t});
    TaskGraph graph;
    graph.num_tasks = num_tasks;
    graph.partitions.assign(depth, singletons);
    return graph;
}

void BranchPointConfig::validate() const {
    if (branch_layers.empty()) throw InputError("branch config: needs at least one branch point");
    if (num_layers < 2)
        throw InputError("branch config: needs at least 2 layers (trunk work plus a head)");
    for (std::size_t d = 0; d < branch_layers.size(); ++d) {
        if (branch_layers[d] < 0 || branch_layers[d] >= num_layers)
            throw InputError("branch config: branch layer " + std::to_string(branch_layers[d]) +
                             " out of range [0, " + std::to_string(num_layers) + ")");
        if (d > 0 && branch_layers[d] <= branch_layers[d - 1])
            throw InputError("branch config: branch layers must be strictly increasing");
    }
}

void BlockCostProfile::validate(int num_layers) const {
    const auto expect = static_cast<std::size_t>(num_layers);
    if (exec_cost.size() != expect || load_cost.size() != expect || param_size.size() != expect)
        throw InputError("block costs: per-layer arrays must all have length " +
                         std::to_string(num_layers));
    for (double c : exec_cost)
        if (c < 0) throw InputError("block costs: negative exec cost");
    for (double c : load_cost)
        if (c < 0) throw InputError("block costs: negative load cost");
    for (std::int64_t s : param_size)
        if (s < 0) throw InputError("block costs: negative parameter size");
}

std::vector<Block> blocks_of(const TaskGraph& graph, const BranchPointConfig& cfg,
                             const BlockCostProfile& costs) {
    graph.validate();
    cfg.validate();
    costs.validate(cfg.num_layers);
    if (graph.depth() != cfg.depth())
        throw InputError("blocks: graph has " + std::to_string(graph.depth()) +
                         " branch points but config has " + std::to_string(cfg.depth()));

    const int depth = cfg.depth();
    const int head_begin = cfg.num_layers - 1;

    auto make_block = [&](int segment, Group tasks, int begin, int end) {
        Block block;
        block.segment = segment;
        block.tasks = std::move(tasks);
        block.layer_begin = begin;
        block.layer_end = end;
        for (int layer = begin; layer < end; ++layer) {
            block.exec_cost += costs.exec_cost[layer];
            block.load_cost += costs.load_cost[layer];
            block.param_size += costs.param_size[layer];
        }
        return block;
    };

    std::vector<Block> blocks;
    Group all(graph.num_tasks);
    for (int t = 0; t < graph.num_tasks; ++t) all[t] = t;
    blocks.push_back(make_block(0, std::move(all), 0, cfg.branch_layers[0]));

    for (int d = 0; d < depth; ++d) {
        const int begin = cfg.branch_layers[d];
        const int end = (d + 1 < depth) ? cfg.branch_layers[d + 1] : head_begin;
        for (const auto& group : graph.partitions[d])
            blocks.push_back(make_block(d + 1, group, begin, std::max(begin, end)));
    }

    for (int t = 0; t < graph.num_tasks; ++t)
        blocks.push_back(make_block(depth + 1, Group{t}, head_begin, cfg.num_layers));
    return blocks;
}

double variety_at_branch(const TaskGraph& graph, const AffinityTensor& affinity, int branch) {
    if (affinity.num_tasks != static_cast<std::size_t>(graph.num_tasks))
        throw InputError("variety: affinity tensor is over " +
                         std::to_string(affinity.num_tasks) + " tasks, graph has " +
                         std::to_string(graph.num_tasks));
    if (branch < 0 || branch >= graph.depth() ||
        static_cast<std::size_t>(branch) >= affinity.num_branch_points)
        throw InputError("variety: branch index " + std::to_string(branch) + " out of range");

    const Partition& partition = graph.partitions[branch];
    double total = 0.0;
    for (const auto& group : partition) {
        double worst = 0.0;  // singletons have no pairs
        for (std::size_t a = 0; a < group.size(); ++a) {
            for (std::size_t b = a + 1; b < group.size(); ++b) {
                const double dissimilarity =
                    1.0 - affinity.at(branch, static_cast<std::size_t>(group[a]),
                                      static_cast<std::size_t>(group[b]));
                worst = std::max(worst, dissimilarity);
            }
        }
        total += worst;
    }
    return total / static_cast<double>(partition.size());
}

double variety_score(const TaskGraph& graph, const AffinityTensor& affinity) {
    double total = 0.0;
    for (int branch = 0; branch < graph.depth(); ++branch)
        total += variety_at_branch(graph, affinity, branch);
    return total;
}

std::int64_t model_size(const TaskGraph& graph, const BranchPointConfig& cfg,
                        const BlockCostProfile& costs) {
    std::int64_t total = 0;
    for (const Block& block : blocks_of(graph, cfg, costs)) total += block.param_size;
    return total;
}

namespace {

// All ways to place the new task at `level` and below, given it currently
// lives with `peers` (the other members of its group one level up; empty
// means it is already private).
void extend_levels(const TaskGraph& base, int task, std::size_t level, const Group& peers,
                   TaskGraph& current, std::vector<TaskGraph>& out, std::size_t cap) {
    if (level == base.partitions.size()) {
        out.push_back(current);
        if (out.size() > cap)
            throw CapacityError("task graph enumeration exceeded cap of " + std::to_string(cap) +
                                " graphs; raise the cap or reduce tasks/branch points");
        return;
    }

    const Partition& base_partition = base.partitions[level];

    // join an existing group that stays within the previous level's peers
    for (std::size_t g = 0; g < base_partition.size(); ++g) {
        const Group& candidate = base_partition[g];
        if (!std::includes(peers.begin(), peers.end(), candidate.begin(), candidate.end()))
            continue;
        Partition extended = base_partition;
        extended[g].push_back(task);
        current.partitions.push_back(canonicalized(std::move(extended)));
        extend_levels(base, task, level + 1, candidate, current, out, cap);
        current.partitions.pop_back();
    }

    // branch out alone; all deeper levels are then forced singletons
    {
        Partition extended = base_partition;
        extended.push_back({task});
        current.partitions.push_back(canonicalized(std::move(extended)));
        extend_levels(base, task, level + 1, Group{}, current, out, cap);
        current.partitions.pop_back();
    }
}

} // namespace

std::vector<TaskGraph> enumerate_task_graphs(int num_tasks, int depth, std::size_t cap) {
    if (num_tasks < 1) throw InputError("enumeration: need at least one task");
    if (depth < 1) throw InputError("enumeration: need at least one branch point");

    std::vector<TaskGraph> generation{TaskGraph::fully_shared(1, depth)};

    for (int task = 1; task < num_tasks; ++task) {
        std::vector<TaskGraph> next;
        std::unordered_set<std::string> seen;
        Group everyone(task);
        for (int t = 0; t < task; ++t) everyone[t] = t;

        for (const TaskGraph& base : generation) {
            std::vector<TaskGraph> extensions;
            TaskGraph current;
            current.num_tasks = task + 1;
            extend_levels(base, task, 0, everyone, current, extensions, cap);
            for (TaskGraph& graph : extensions) {
                if (seen.insert(graph.canonical_key()).second) {
                    next.push_back(std::move(graph));
                    if (next.size() > cap)
                        throw CapacityError("task graph enumeration exceeded cap of " +
                                            std::to_string(cap) +
                                            " graphs; raise the cap or reduce tasks/branch points");
                }
            }
        }
        generation = std::move(next);
    }

    std::sort(generation.begin(), generation.end(), [](const TaskGraph& a, const TaskGraph& b) {
        return a.canonical_key() < b.canonical_key();
    });
    return generation;
}

} // namespace mtsched
