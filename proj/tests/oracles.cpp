#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace oracle {

using mtsched::BlockCostProfile;
using mtsched::BranchPointConfig;
using mtsched::CostMatrix;
using mtsched::Group;
using mtsched::OrderingProblem;
using mtsched::Partition;
using mtsched::RepresentationProfile;
using mtsched::TaskGraph;
using mtsched::UndirectedGraph;

double pearson_textbook(std::span<const double> x, std::span<const double> y) {
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxy += x[i] * y[i];
        sxx += x[i] * x[i];
        syy += y[i] * y[i];
    }
    return (n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
}

std::vector<double> ranks_by_counting(std::span<const double> v) {
    std::vector<double> ranks(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::size_t smaller = 0, equal = 0;
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (v[j] < v[i]) ++smaller;
            if (v[j] == v[i]) ++equal;
        }
        // positions smaller+1 .. smaller+equal share their average
        ranks[i] = static_cast<double>(smaller) + 0.5 * static_cast<double>(equal + 1);
    }
    return ranks;
}

double spearman_rank_then_pearson(std::span<const double> u, std::span<const double> v) {
    const std::vector<double> ru = ranks_by_counting(u);
    const std::vector<double> rv = ranks_by_counting(v);
    return pearson_textbook(ru, rv);
}

std::vector<Partition> all_partitions(int n) {
    std::vector<Partition> result;
    std::vector<int> labels(n, 0);

    // restricted growth strings: labels[0] = 0, labels[i] <= max(prefix) + 1
    auto emit = [&]() {
        const int groups = *std::max_element(labels.begin(), labels.end()) + 1;
        Partition partition(groups);
        for (int t = 0; t < n; ++t) partition[labels[t]].push_back(t);
        result.push_back(mtsched::canonicalized(partition));
    };
    std::function<void(int, int)> grow = [&](int index, int max_used) {
        if (index == n) {
            emit();
            return;
        }
        for (int label = 0; label <= max_used + 1; ++label) {
            labels[index] = label;
            grow(index + 1, std::max(max_used, label));
        }
    };
    if (n > 0) grow(1, 0);  // labels[0] stays 0
    if (n == 0) result.push_back({});
    return result;
}

std::set<std::string> all_refinement_chains(int n, int depth) {
    const std::vector<Partition> partitions = all_partitions(n);

    std::set<std::string> keys;
    std::vector<const Partition*> chain;
    std::function<void(int)> extend = [&](int level) {
        if (level == depth) {
            TaskGraph graph;
            graph.num_tasks = n;
            for (const Partition* p : chain) graph.partitions.push_back(*p);
            keys.insert(graph.canonical_key());
            return;
        }
        for (const Partition& candidate : partitions) {
            if (!chain.empty() && !mtsched::refines(candidate, *chain.back())) continue;
            chain.push_back(&candidate);
            extend(level + 1);
            chain.pop_back();
        }
    };
    extend(0);
    return keys;
}

std::size_t expected_block_count(const TaskGraph& graph) {
    std::size_t count = 1;  // trunk
    for (const Partition& partition : graph.partitions) count += partition.size();
    return count + static_cast<std::size_t>(graph.num_tasks);
}

namespace {

// The group of tasks sharing `layer` with `task`: everyone before the first
// branch layer, the task's group at the governing branch level in the middle,
// only the task itself on the final (head) layer.
Group owning_group(const TaskGraph& graph, const BranchPointConfig& cfg, int layer, int task) {
    if (layer == cfg.num_layers - 1) return {task};
    int level = -1;  // trunk
    for (int d = 0; d < cfg.depth(); ++d)
        if (cfg.branch_layers[d] <= layer) level = d;
    if (level < 0) {
        Group everyone(graph.num_tasks);
        for (int t = 0; t < graph.num_tasks; ++t) everyone[t] = t;
        return everyone;
    }
    return graph.partitions[level][graph.group_index(level, task)];
}

} // namespace

double switching_cost_layerwise(const TaskGraph& graph, const BranchPointConfig& cfg,
                                const BlockCostProfile& costs, int from_task, int to_task) {
    double total = 0.0;
    for (int layer = 0; layer < cfg.num_layers; ++layer) {
        const Group group = owning_group(graph, cfg, layer, to_task);
        const bool shared_with_from =
            std::binary_search(group.begin(), group.end(), from_task);
        if (!shared_with_from) total += costs.exec_cost[layer] + costs.load_cost[layer];
    }
    return total;
}

double exact_optimum_dp(const OrderingProblem& problem) {
    const int n = problem.num_tasks();
    const std::size_t full = std::size_t{1} << n;
    constexpr double kInf = std::numeric_limits<double>::infinity();

    std::vector<double> arcs(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) arcs[static_cast<std::size_t>(a) * n + b] = problem.arc_cost(a, b);

    std::vector<std::uint32_t> preds(n, 0);
    for (const auto& [before, after] : problem.precedence) preds[after] |= 1u << before;

    std::vector<int> starts;
    for (int t = 0; t < n; ++t)
        if (preds[t] == 0) starts.push_back(t);
    const bool closed = problem.objective == mtsched::Objective::ClosedTour;
    if (closed && problem.precedence.empty() && n > 1) starts = {0};  // rotation invariance

    double best = kInf;
    std::vector<double> dp(full * static_cast<std::size_t>(n));
    for (const int start : starts) {
        std::fill(dp.begin(), dp.end(), kInf);
        dp[(std::size_t{1} << start) * n + start] = 0.0;
        for (std::size_t mask = 1; mask < full; ++mask) {
            if (!(mask & (std::size_t{1} << start))) continue;
            for (int last = 0; last < n; ++last) {
                const double here = dp[mask * n + last];
                if (here == kInf || !(mask & (std::size_t{1} << last))) continue;
                if (mask + 1 == full) {
                    const double total =
                        closed && n > 1 ? here + arcs[static_cast<std::size_t>(last) * n + start]
                                        : here;
                    best = std::min(best, total);
                    continue;
                }
                for (int next = 0; next < n; ++next) {
                    const std::size_t bit = std::size_t{1} << next;
                    if (mask & bit) continue;
                    if ((preds[next] & mask) != preds[next]) continue;
                    double& slot = dp[(mask | bit) * n + next];
                    const double candidate = here + arcs[static_cast<std::size_t>(last) * n + next];
                    if (candidate < slot) slot = candidate;
                }
            }
        }
    }
    return best;
}

std::vector<int> exact_optimal_order_dp(const OrderingProblem& problem) {
    const int n = problem.num_tasks();
    const std::size_t full = std::size_t{1} << n;
    constexpr double kInf = std::numeric_limits<double>::infinity();

    std::vector<double> arcs(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) arcs[static_cast<std::size_t>(a) * n + b] = problem.arc_cost(a, b);

    std::vector<std::uint32_t> preds(n, 0);
    for (const auto& [before, after] : problem.precedence) preds[after] |= 1u << before;

    std::vector<int> starts;
    for (int t = 0; t < n; ++t)
        if (preds[t] == 0) starts.push_back(t);
    const bool closed = problem.objective == mtsched::Objective::ClosedTour;
    if (closed && problem.precedence.empty() && n > 1) starts = {0};

    double best = kInf;
    std::vector<int> best_order;
    std::vector<double> dp(full * static_cast<std::size_t>(n));
    std::vector<int> parent(full * static_cast<std::size_t>(n));
    for (const int start : starts) {
        std::fill(dp.begin(), dp.end(), kInf);
        std::fill(parent.begin(), parent.end(), -1);
        dp[(std::size_t{1} << start) * n + start] = 0.0;
        for (std::size_t mask = 1; mask < full; ++mask) {
            if (!(mask & (std::size_t{1} << start))) continue;
            for (int last = 0; last < n; ++last) {
                const double here = dp[mask * n + last];
                if (here == kInf || !(mask & (std::size_t{1} << last))) continue;
                if (mask + 1 == full) {
                    const double total =
                        closed && n > 1 ? here + arcs[static_cast<std::size_t>(last) * n + start]
                                        : here;
                    if (total < best) {
                        best = total;
                        best_order.assign(static_cast<std::size_t>(n), -1);
                        std::size_t m = mask;
                        int l = last;
                        for (int pos = n - 1; pos >= 0; --pos) {
                            best_order[pos] = l;
                            const int p = parent[m * n + l];
                            m &= ~(std::size_t{1} << l);
                            l = p;
                        }
                    }
                    continue;
                }
                for (int next = 0; next < n; ++next) {
                    const std::size_t bit = std::size_t{1} << next;
                    if (mask & bit) continue;
                    if ((preds[next] & mask) != preds[next]) continue;
                    double& slot = dp[(mask | bit) * n + next];
                    const double candidate = here + arcs[static_cast<std::size_t>(last) * n + next];
                    if (candidate < slot) {
                        slot = candidate;
                        parent[(mask | bit) * n + next] = last;
                    }
                }
            }
        }
    }
    return best_order;
}

bool hamiltonian_cycle_exists(const UndirectedGraph& graph) {
    const int n = graph.num_vertices;
    if (n < 3) return false;
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (const auto& [u, v] : graph.edges) {
        if (u == v) continue;
        adj[u][v] = true;
        adj[v][u] = true;
    }

    std::vector<bool> used(n, false);
    used[0] = true;
    std::function<bool(int, int)> extend = [&](int vertex, int placed) -> bool {
        if (placed == n) return adj[vertex][0];
        for (int next = 1; next < n; ++next) {
            if (used[next] || !adj[vertex][next]) continue;
            used[next] = true;
            if (extend(next, placed + 1)) return true;
            used[next] = false;
        }
        return false;
    };
    return extend(0, 1);
}

RepresentationProfile random_profile(std::mt19937_64& rng, const std::string& task_id,
                                     int branch_points, int samples, int features) {
    std::uniform_real_distribution<double> value(-2.0, 2.0);
    RepresentationProfile profile;
    profile.task_id = task_id;
    profile.branch_outputs.resize(branch_points);
    for (auto& matrix : profile.branch_outputs) {
        matrix.resize(samples);
        for (auto& row : matrix) {
            row.resize(features);
            for (double& x : row) x = value(rng);
        }
    }
    return profile;
}

mtsched::AffinityTensor random_affinity(std::mt19937_64& rng, int branch_points, int tasks) {
    std::uniform_real_distribution<double> value(-1.0, 1.0);
    mtsched::AffinityTensor tensor;
    tensor.num_branch_points = branch_points;
    tensor.num_tasks = tasks;
    tensor.scores.assign(static_cast<std::size_t>(branch_points) * tasks * tasks, 0.0);
    for (int d = 0; d < branch_points; ++d) {
        for (int i = 0; i < tasks; ++i) {
            tensor.at(d, i, i) = 1.0;
            for (int j = i + 1; j < tasks; ++j) {
                const double s = value(rng);
                tensor.at(d, i, j) = s;
                tensor.at(d, j, i) = s;
            }
        }
    }
    return tensor;
}

TaskGraph random_task_graph(std::mt19937_64& rng, int tasks, int depth) {
    TaskGraph graph;
    graph.num_tasks = tasks;

    Partition current{Group{}};
    for (int t = 0; t < tasks; ++t) current[0].push_back(t);

    for (int level = 0; level < depth; ++level) {
        Partition next;
        for (const Group& group : current) {
            // randomly scatter the group's members over up to |group| buckets
            std::vector<Group> buckets(group.size());
            for (const int member : group)
                buckets[rng() % buckets.size()].push_back(member);
            for (Group& bucket : buckets)
                if (!bucket.empty()) next.push_back(std::move(bucket));
        }
        graph.partitions.push_back(mtsched::canonicalized(next));
        current = graph.partitions.back();
    }
    return graph;
}

BlockCostProfile random_cost_profile(std::mt19937_64& rng, int layers) {
    std::uniform_real_distribution<double> cost(0.1, 4.0);
    std::uniform_int_distribution<std::int64_t> size(64, 8192);
    BlockCostProfile profile;
    profile.exec_cost.resize(layers);
    profile.load_cost.resize(layers);
    profile.param_size.resize(layers);
    for (int l = 0; l < layers; ++l) {
        profile.exec_cost[l] = cost(rng);
        profile.load_cost[l] = cost(rng);
        profile.param_size[l] = size(rng);
    }
    return profile;
}

CostMatrix random_cost_matrix(std::mt19937_64& rng, int tasks, double max_cost) {
    std::uniform_real_distribution<double> cost(0.0, max_cost);
    CostMatrix matrix = CostMatrix::zero(tasks);
    for (int i = 0; i < tasks; ++i)
        for (int j = 0; j < tasks; ++j)
            if (i != j) matrix.at(i, j) = cost(rng);
    return matrix;
}

std::vector<std::pair<int, int>> random_acyclic_precedence(std::mt19937_64& rng, int tasks,
                                                           int max_pairs) {
    std::vector<int> topo(tasks);
    for (int t = 0; t < tasks; ++t) topo[t] = t;
    std::shuffle(topo.begin(), topo.end(), rng);

    std::vector<std::pair<int, int>> pairs;
    const int wanted = max_pairs > 0 ? static_cast<int>(rng() % (max_pairs + 1)) : 0;
    for (int k = 0; k < wanted && tasks >= 2; ++k) {
        int a = static_cast<int>(rng() % tasks);
        int b = static_cast<int>(rng() % tasks);
        if (a == b) continue;
        if (std::find(topo.begin(), topo.end(), a) > std::find(topo.begin(), topo.end(), b))
            std::swap(a, b);
        const auto pair = std::make_pair(a, b);
        if (std::find(pairs.begin(), pairs.end(), pair) == pairs.end()) pairs.push_back(pair);
    }
    return pairs;
}

} // namespace oracle
