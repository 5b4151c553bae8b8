#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "mtsched/costmodel.hpp"

namespace mtsched {

enum class Objective { OpenPath, ClosedTour };

// A task-ordering instance: switching costs, hard precedence pairs (first
// before second) and conditional arcs whose probability scales the expected
// switching cost. Conditionals never affect feasibility.
struct OrderingProblem {
    CostMatrix costs;
    std::vector<std::pair<int, int>> precedence;
    std::vector<ConditionalArc> conditional;
    Objective objective = Objective::OpenPath;

    int num_tasks() const { return costs.num_tasks; }

    // Throws InputError on bad indices/probabilities and ConstraintError
    // (naming a cycle) when the precedence relation is cyclic.
    void validate() const;

    // c[a][b] scaled by the conditional probability of (a, b), default 1.
    double arc_cost(int a, int b) const;
};

enum class SolverKind { Exact, Genetic };

struct OrderingSolution {
    std::vector<int> order;
    double fitness = 0.0;
    SolverKind solver = SolverKind::Exact;
    std::uint64_t seed = 0;          // genetic only
    std::size_t generations = 0;     // genetic only
};

// Genetic-solver knobs. Offspring that are not valid orderings are discarded
// by default; Repair rebuilds duplicated entries in parent order instead
// (precedence-violating offspring are always discarded).
struct GaParams {
    std::size_t population_size = 200;
    std::size_t elite_pairs = 20;
    std::size_t max_stagnant_generations = 200;
    std::uint64_t rng_seed = 0;
    enum class InvalidPolicy { Discard, Repair };
    InvalidPolicy invalid_policy = InvalidPolicy::Discard;
    std::size_t max_restarts = 5;

    void validate() const;  // population_size >= 2*elite_pairs >= 2
};

inline constexpr int kDefaultExactCap = 11;

// True iff every precedence pair (i, j) has i placed before j.
bool precedence_feasible(const OrderingProblem& problem, std::span<const int> order);

// Sum of consecutive switching costs (plus the wrap-around arc for closed
// tours), conditional probabilities applied. Throws ConstraintError if the
// order violates a precedence pair.
double fitness(const OrderingProblem& problem, std::span<const int> order);

// Global minimum over all feasible permutations; ties resolve to the
// lexicographically smallest order. Throws CapacityError above `cap` tasks.
OrderingSolution solve_exact(const OrderingProblem& problem, int cap = kDefaultExactCap);

// Genetic solver per GaParams; deterministic for a fixed seed.
OrderingSolution solve_ga(const OrderingProblem& problem, const GaParams& params = {});

struct UndirectedGraph {
    int num_vertices = 0;
    std::vector<std::pair<int, int>> edges;
};

// Complete closed-tour instance whose arcs cost 0 on graph edges and 1
// elsewhere: the graph has a Hamiltonian cycle iff the optimal fitness is 0.
OrderingProblem hamiltonian_reduction(const UndirectedGraph& graph);

} // namespace mtsched
