#include "mtsched/ordering.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <string>

#include "mtsched/error.hpp"

namespace mtsched {

namespace {

// Finds one cycle in the precedence digraph and renders it as "a -> b -> a".
std::string find_cycle(int n, const std::vector<std::vector<int>>& successors) {
    std::vector<int> state(n, 0);  // 0 unvisited, 1 on stack, 2 done
    std::vector<int> stack;

    // returns the vertex where a cycle closes, or -1
    std::function<int(int)> visit = [&](int v) -> int {
        state[v] = 1;
        stack.push_back(v);
        for (int w : successors[v]) {
            if (state[w] == 1) return w;
            if (state[w] == 0) {
                const int hit = visit(w);
                if (hit >= 0) return hit;
            }
        }
        state[v] = 2;
        stack.pop_back();
        return -1;
    };

    for (int v = 0; v < n; ++v) {
        if (state[v] != 0) continue;
        stack.clear();
        const int hit = visit(v);
        if (hit < 0) continue;
        std::string text;
        bool in_cycle = false;
        for (int u : stack) {
            if (u == hit) in_cycle = true;
            if (in_cycle) text += std::to_string(u) + " -> ";
        }
        text += std::to_string(hit);
        return text;
    }
    return {};
}

} // namespace

void OrderingProblem::validate() const {
    costs.validate();
    const int n = num_tasks();

    std::vector<std::vector<int>> successors(n);
    for (const auto& [before, after] : precedence) {
        if (before < 0 || before >= n || after < 0 || after >= n)
            throw InputError("precedence pair (" + std::to_string(before) + ", " +
                             std::to_string(after) + ") out of range");
        if (before == after)
            throw ConstraintError("precedence pair (" + std::to_string(before) + ", " +
                                  std::to_string(after) + ") forms a self-loop");
        successors[before].push_back(after);
    }
    const std::string cycle = find_cycle(n, successors);
    if (!cycle.empty())
        throw ConstraintError("precedence constraints are cyclic: " + cycle);

    for (const ConditionalArc& arc : conditional) {
        if (arc.before < 0 || arc.before >= n || arc.after < 0 || arc.after >= n)
            throw InputError("conditional pair (" + std::to_string(arc.before) + ", " +
                             std::to_string(arc.after) + ") out of range");
        if (arc.prob < 0.0 || arc.prob > 1.0)
            throw InputError("conditional probability " + std::to_string(arc.prob) +
                             " outside [0, 1]");
    }
}

double OrderingProblem::arc_cost(int a, int b) const {
    double prob = 1.0;
    for (const ConditionalArc& arc : conditional) {
        if (arc.before == a && arc.after == b) {
            prob = arc.prob;
            break;
        }
    }
    return prob * costs.at(a, b);
}

void GaParams::validate() const {
    if (elite_pairs < 1) throw InputError("ga params: elite_pairs must be at least 1");
    if (population_size < 2 * elite_pairs)
        throw InputError("ga params: population_size must be at least 2*elite_pairs");
}

bool precedence_feasible(const OrderingProblem& problem, std::span<const int> order) {
    std::vector<int> position(problem.num_tasks(), -1);
    for (std::size_t p = 0; p < order.size(); ++p) position[order[p]] = static_cast<int>(p);
    for (const auto& [before, after] : problem.precedence)
        if (position[before] >= position[after]) return false;
    return true;
}

namespace {

void check_permutation(const OrderingProblem& problem, std::span<const int> order) {
    const int n = problem.num_tasks();
    if (order.size() != static_cast<std::size_t>(n))
        throw InputError("order covers " + std::to_string(order.size()) + " of " +
                         std::to_string(n) + " tasks");
    std::vector<bool> seen(n, false);
    for (int task : order) {
        if (task < 0 || task >= n || seen[task])
            throw InputError("order is not a permutation of the tasks");
        seen[task] = true;
    }
}

// Flat n*n matrix of conditional-probability-scaled costs.
std::vector<double> effective_arcs(const OrderingProblem& problem) {
    const int n = problem.num_tasks();
    std::vector<double> arcs(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) arcs[static_cast<std::size_t>(a) * n + b] = problem.costs.at(a, b);
    for (const ConditionalArc& arc : problem.conditional)
        arcs[static_cast<std::size_t>(arc.before) * n + arc.after] =
            arc.prob * problem.costs.at(arc.before, arc.after);
    return arcs;
}

double order_cost(const std::vector<double>& arcs, int n, Objective objective,
                  std::span<const int> order) {
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < order.size(); ++k)
        total += arcs[static_cast<std::size_t>(order[k]) * n + order[k + 1]];
    if (objective == Objective::ClosedTour && order.size() > 1)
        total += arcs[static_cast<std::size_t>(order.back()) * n + order.front()];
    return total;
}

} // namespace

double fitness(const OrderingProblem& problem, std::span<const int> order) {
    check_permutation(problem, order);
    if (!precedence_feasible(problem, order))
        throw ConstraintError("order violates a precedence constraint");
    return order_cost(effective_arcs(problem), problem.num_tasks(), problem.objective, order);
}

OrderingSolution solve_exact(const OrderingProblem& problem, int cap) {
    problem.validate();
    const int n = problem.num_tasks();
    if (n > cap)
        throw CapacityError("exact solver capped at " + std::to_string(cap) + " tasks, got " +
                            std::to_string(n) + "; use the genetic solver or raise the cap");
    if (n > 30) throw CapacityError("exact solver limited to 30 tasks");

    const std::vector<double> arcs = effective_arcs(problem);
    std::vector<std::uint32_t> preds(n, 0);
    for (const auto& [before, after] : problem.precedence)
        preds[after] |= (1u << before);

    std::vector<int> current(n), best_order;
    double best_cost = 0.0;
    bool have_best = false;

    // Closed tours without precedence are rotation-invariant, and the
    // lexicographically smallest optimum starts at task 0.
    const bool pin_first =
        problem.objective == Objective::ClosedTour && problem.precedence.empty() && n > 1;

    // Depth-first in ascending task order: the first optimum found is the
    // lexicographically smallest, so improvement stays strict.
    std::function<void(int, std::uint32_t, double)> descend = [&](int depth, std::uint32_t used,
                                                                  double partial) {
        if (have_best && partial >= best_cost) return;
        if (depth == n) {
            double total = partial;
            if (problem.objective == Objective::ClosedTour && n > 1)
                total += arcs[static_cast<std::size_t>(current[n - 1]) * n + current[0]];
            if (!have_best || total < best_cost) {
                best_cost = total;
                best_order = current;
                have_best = true;
            }
            return;
        }
        for (int task = 0; task < n; ++task) {
            const std::uint32_t bit = 1u << task;
            if (used & bit) continue;
            if ((preds[task] & used) != preds[task]) continue;
            if (depth == 0 && pin_first && task != 0) break;
            current[depth] = task;
            const double step =
                depth == 0 ? 0.0 : arcs[static_cast<std::size_t>(current[depth - 1]) * n + task];
            descend(depth + 1, used | bit, partial + step);
        }
    };
    descend(0, 0, 0.0);

    OrderingSolution solution;
    solution.order = best_order;
    solution.fitness = best_cost;
    solution.solver = SolverKind::Exact;
    return solution;
}

namespace {

// Deterministic across standard libraries, unlike uniform_int_distribution.
std::size_t bounded(std::mt19937_64& rng, std::size_t bound) {
    return static_cast<std::size_t>(rng() % bound);
}

// Uniformly random topological order: repeatedly pick among the ready tasks.
std::vector<int> random_feasible_order(std::mt19937_64& rng, int n,
                                       const std::vector<std::vector<int>>& successors,
                                       std::vector<int>& missing_preds_scratch,
                                       const std::vector<int>& missing_preds_init) {
    std::vector<int> order;
    order.reserve(n);
    missing_preds_scratch = missing_preds_init;
    std::vector<int> ready;
    for (int t = 0; t < n; ++t)
        if (missing_preds_scratch[t] == 0) ready.push_back(t);

    while (order.size() < static_cast<std::size_t>(n)) {
        const std::size_t pick = bounded(rng, ready.size());
        const int task = ready[pick];
        ready[pick] = ready.back();
        ready.pop_back();
        order.push_back(task);
        for (int next : successors[task])
            if (--missing_preds_scratch[next] == 0) ready.push_back(next);
    }
    return order;
}

} // namespace

OrderingSolution solve_ga(const OrderingProblem& problem, const GaParams& params) {
    problem.validate();
    params.validate();
    const int n = problem.num_tasks();

    OrderingSolution solution;
    solution.solver = SolverKind::Genetic;
    solution.seed = params.rng_seed;
    if (n == 1) {
        solution.order = {0};
        solution.fitness = 0.0;
        return solution;
    }

    const std::vector<double> arcs = effective_arcs(problem);
    std::vector<std::vector<int>> successors(n);
    std::vector<int> missing_preds_init(n, 0);
    for (const auto& [before, after] : problem.precedence) {
        successors[before].push_back(after);
        ++missing_preds_init[after];
    }
    std::vector<int> position(n), scratch(n);

    auto feasible = [&](const std::vector<int>& order) {
        for (std::size_t p = 0; p < order.size(); ++p) position[order[p]] = static_cast<int>(p);
        for (const auto& [before, after] : problem.precedence)
            if (position[before] >= position[after]) return false;
        return true;
    };
    auto evaluate = [&](const std::vector<int>& order) {
        return order_cost(arcs, n, problem.objective, order);
    };

    struct Individual {
        std::vector<int> order;
        double fit = 0.0;
    };

    std::mt19937_64 rng(params.rng_seed);
    std::vector<int> best_order;
    double best_fitness = 0.0;
    bool have_best = false;
    std::size_t total_generations = 0;

    const std::size_t runs = 1 + params.max_restarts;
    for (std::size_t run = 0; run < runs; ++run) {
        std::vector<Individual> population(params.population_size);
        for (auto& individual : population) {
            individual.order = random_feasible_order(rng, n, successors, scratch,
                                                     missing_preds_init);
            individual.fit = evaluate(individual.order);
        }
        std::stable_sort(population.begin(), population.end(),
                         [](const Individual& a, const Individual& b) { return a.fit < b.fit; });

        double run_best = population.front().fit;
        std::size_t stagnant = 0;

        while (stagnant < params.max_stagnant_generations) {
            ++total_generations;
            std::vector<Individual> offspring;
            offspring.reserve(2 * params.elite_pairs);

            for (std::size_t pair = 0; pair < params.elite_pairs; ++pair) {
                const std::vector<int>& pa = population[2 * pair].order;
                const std::vector<int>& pb = population[2 * pair + 1].order;
                const std::size_t k = 1 + bounded(rng, static_cast<std::size_t>(n));

                for (int which = 0; which < 2; ++which) {
                    const std::vector<int>& prefix_parent = which == 0 ? pb : pa;
                    const std::vector<int>& tail_parent = which == 0 ? pa : pb;

                    std::vector<int> child(prefix_parent.begin(),
                                           prefix_parent.begin() + static_cast<long>(k));
                    if (params.invalid_policy == GaParams::InvalidPolicy::Repair) {
                        // order-preserving tail: the donor's unused tasks
                        std::vector<bool> used(n, false);
                        for (int task : child) used[task] = true;
                        for (int task : tail_parent)
                            if (!used[task]) child.push_back(task);
                    } else {
                        child.insert(child.end(), tail_parent.begin() + static_cast<long>(k),
                                     tail_parent.end());
                    }

                    // mutation: swap two distinct positions
                    const std::size_t m1 = bounded(rng, static_cast<std::size_t>(n));
                    std::size_t m2 = bounded(rng, static_cast<std::size_t>(n - 1));
                    if (m2 >= m1) ++m2;
                    std::swap(child[m1], child[m2]);

                    if (params.invalid_policy == GaParams::InvalidPolicy::Discard) {
                        std::vector<bool> seen(n, false);
                        bool valid = true;
                        for (int task : child) {
                            if (seen[task]) {
                                valid = false;
                                break;
                            }
                            seen[task] = true;
                        }
                        if (!valid) continue;
                    }
                    if (!feasible(child)) continue;
                    Individual individual;
                    individual.fit = evaluate(child);
                    individual.order = std::move(child);
                    offspring.push_back(std::move(individual));
                }
            }

            for (auto& individual : offspring) population.push_back(std::move(individual));
            std::stable_sort(population.begin(), population.end(),
                             [](const Individual& a, const Individual& b) { return a.fit < b.fit; });

            // drop exact duplicates while truncating; keeps selection pressure
            // from collapsing the population onto copies of one order
            std::vector<Individual> survivors;
            survivors.reserve(params.population_size);
            for (auto& individual : population) {
                if (survivors.size() == params.population_size) break;
                bool duplicate = false;
                for (auto it = survivors.rbegin();
                     it != survivors.rend() && it->fit == individual.fit; ++it) {
                    if (it->order == individual.order) {
                        duplicate = true;
                        break;
                    }
                }
                if (!duplicate) survivors.push_back(std::move(individual));
            }
            while (survivors.size() < params.population_size) {
                Individual fresh;
                fresh.order = random_feasible_order(rng, n, successors, scratch,
                                                    missing_preds_init);
                fresh.fit = evaluate(fresh.order);
                survivors.push_back(std::move(fresh));
            }
            population = std::move(survivors);
            std::stable_sort(population.begin(), population.end(),
                             [](const Individual& a, const Individual& b) { return a.fit < b.fit; });

            if (population.front().fit < run_best) {
                run_best = population.front().fit;
                stagnant = 0;
            } else {
                ++stagnant;
            }
        }

        if (!have_best || population.front().fit < best_fitness) {
            best_fitness = population.front().fit;
            best_order = population.front().order;
            have_best = true;
        }
    }

    solution.order = std::move(best_order);
    solution.fitness = best_fitness;
    solution.generations = total_generations;
    return solution;
}

OrderingProblem hamiltonian_reduction(const UndirectedGraph& graph) {
    const int n = graph.num_vertices;
    if (n < 3) throw InputError("hamiltonian reduction: need at least 3 vertices");

    std::vector<bool> adjacent(static_cast<std::size_t>(n) * n, false);
    for (const auto& [u, v] : graph.edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw InputError("hamiltonian reduction: edge endpoint out of range");
        if (u == v) continue;  // ignore self-loops in simple graphs
        adjacent[static_cast<std::size_t>(u) * n + v] = true;
        adjacent[static_cast<std::size_t>(v) * n + u] = true;
    }

    OrderingProblem problem;
    problem.objective = Objective::ClosedTour;
    problem.costs = CostMatrix::zero(n);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v)
                problem.costs.at(u, v) = adjacent[static_cast<std::size_t>(u) * n + v] ? 0.0 : 1.0;
    return problem;
}

} // namespace mtsched
