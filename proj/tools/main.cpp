// mtsched: affinity-aware task graphs and optimal execution orders for
// multitask inference on memory-constrained devices.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mtsched/bench.hpp"
#include "mtsched/error.hpp"
#include "mtsched/pipeline.hpp"

namespace {

using mtsched::GaParams;
using mtsched::SolverChoice;

struct SolverFlags {
    std::string solver = "auto";
    int exact_cap = mtsched::kDefaultExactCap;
    std::uint64_t seed = 0;
    std::string ga_policy = "discard";
    std::size_t ga_population = GaParams().population_size;
    std::size_t ga_elite_pairs = GaParams().elite_pairs;
    std::size_t ga_stagnation = GaParams().max_stagnant_generations;
    std::size_t ga_restarts = GaParams().max_restarts;
};

void add_solver_flags(CLI::App* cmd, SolverFlags& flags) {
    cmd->add_option("--solver", flags.solver, "Solver: auto, exact or ga")
        ->check(CLI::IsMember({"auto", "exact", "ga"}));
    cmd->add_option("--exact-cap", flags.exact_cap, "Max tasks for the exact solver");
    cmd->add_option("--seed", flags.seed, "Genetic solver rng seed");
    cmd->add_option("--ga-policy", flags.ga_policy, "Invalid-offspring policy")
        ->check(CLI::IsMember({"discard", "repair"}));
    cmd->add_option("--ga-population", flags.ga_population, "Genetic population size");
    cmd->add_option("--ga-elite-pairs", flags.ga_elite_pairs, "Elite pairs per generation");
    cmd->add_option("--ga-stagnation", flags.ga_stagnation,
                    "Generations without improvement before a run stops");
    cmd->add_option("--ga-restarts", flags.ga_restarts, "Extra independent runs");
}

SolverChoice solver_choice(const SolverFlags& flags) {
    if (flags.solver == "exact") return SolverChoice::Exact;
    if (flags.solver == "ga") return SolverChoice::Genetic;
    return SolverChoice::Auto;
}

GaParams ga_params(const SolverFlags& flags) {
    GaParams params;
    params.population_size = flags.ga_population;
    params.elite_pairs = flags.ga_elite_pairs;
    params.max_stagnant_generations = flags.ga_stagnation;
    params.max_restarts = flags.ga_restarts;
    params.rng_seed = flags.seed;
    params.invalid_policy = flags.ga_policy == "repair" ? GaParams::InvalidPolicy::Repair
                                                        : GaParams::InvalidPolicy::Discard;
    return params;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Affinity-aware task graph generation and task ordering"};
    app.require_subcommand(1);

    // affinity
    std::string affinity_profiles, affinity_out;
    CLI::App* affinity = app.add_subcommand("affinity", "Compute the task-affinity tensor");
    affinity->add_option("--profiles", affinity_profiles, "Representation profiles (json)")
        ->required();
    affinity->add_option("--out", affinity_out, "Output affinity document")->required();

    // graphgen
    mtsched::GraphgenCommand graphgen_cmd;
    SolverFlags graphgen_flags;
    std::string graphgen_profiles, graphgen_affinity, graphgen_arch, graphgen_out_dir;
    std::string graphgen_precedence, graphgen_conditional;
    std::vector<std::int64_t> graphgen_budgets;
    CLI::App* graphgen =
        app.add_subcommand("graphgen", "Enumerate, score and select task graphs");
    graphgen->add_option("--profiles", graphgen_profiles, "Representation profiles (json)");
    graphgen->add_option("--affinity", graphgen_affinity, "Precomputed affinity document");
    graphgen->add_option("--costs", graphgen_arch, "Architecture cost document")->required();
    graphgen->add_option("--branch-points", graphgen_cmd.branch_points,
                         "Number of branch points (default 3)");
    graphgen->add_option("--budgets", graphgen_budgets,
                         "Explicit model-size budgets (default: log-spaced grid)");
    graphgen->add_option("--budget-count", graphgen_cmd.budget_count,
                         "Size of the default budget grid");
    graphgen->add_option("--cap", graphgen_cmd.enumeration_cap, "Enumeration cap");
    graphgen->add_option("--precedence", graphgen_precedence, "Precedence sidecar file");
    graphgen->add_option("--conditional", graphgen_conditional, "Conditional sidecar file");
    graphgen->add_option("--out-dir", graphgen_out_dir, "Output directory")->required();
    add_solver_flags(graphgen, graphgen_flags);

    // order
    mtsched::OrderCommand order_cmd;
    SolverFlags order_flags;
    std::string order_costs, order_graph, order_arch, order_precedence, order_conditional,
        order_out, order_objective = "path";
    CLI::App* order = app.add_subcommand("order", "Solve the task execution order");
    order->add_option("--costs", order_costs, "Cost matrix document (json)");
    order->add_option("--graph", order_graph, "Task graph document (json)");
    order->add_option("--arch", order_arch, "Architecture cost document (json)");
    order->add_option("--precedence", order_precedence, "Precedence sidecar file");
    order->add_option("--conditional", order_conditional, "Conditional sidecar file");
    order->add_option("--objective", order_objective, "path (open) or tour (closed)")
        ->check(CLI::IsMember({"path", "tour"}));
    order->add_option("--out", order_out, "Output solution document")->required();
    add_solver_flags(order, order_flags);

    // tradeoff
    mtsched::TradeoffCommand tradeoff_cmd;
    std::string tradeoff_scores, tradeoff_out, tradeoff_selected;
    std::vector<std::int64_t> tradeoff_budgets;
    CLI::App* tradeoff =
        app.add_subcommand("tradeoff", "Sweep budgets over a scored-graph file");
    tradeoff->add_option("--scores", tradeoff_scores, "graph_scores.jsonl input")->required();
    tradeoff->add_option("--budgets", tradeoff_budgets, "Explicit model-size budgets");
    tradeoff->add_option("--budget-count", tradeoff_cmd.budget_count,
                         "Size of the default budget grid");
    tradeoff->add_option("--out", tradeoff_out, "Output tradeoff table (tsv)")->required();
    tradeoff->add_option("--selected-out", tradeoff_selected, "Selected graph document");

    // bench
    SolverFlags bench_flags;
    std::vector<std::string> bench_files;
    std::string bench_optima;
    CLI::App* bench = app.add_subcommand("bench", "Validate solvers on TSPLIB/SOP instances");
    bench->add_option("files", bench_files, "Instance files (.tsp/.sop)")->required();
    bench->add_option("--optima", bench_optima, "Extra known optima (lines: name value)");
    add_solver_flags(bench, bench_flags);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*affinity) {
            mtsched::AffinityCommand command;
            command.profiles_path = affinity_profiles;
            command.out_path = affinity_out;
            const mtsched::AffinityOutcome outcome = mtsched::run_affinity(command);
            std::cout << "tasks=" << outcome.num_tasks
                      << " branch_points=" << outcome.num_branch_points
                      << " samples=" << outcome.num_samples << "\n";
            if (outcome.degenerate.pearson_fallbacks + outcome.degenerate.spearman_fallbacks > 0)
                std::cerr << "warning: zero-variance activations hit the fallback rule ("
                          << outcome.degenerate.pearson_fallbacks << " pearson, "
                          << outcome.degenerate.spearman_fallbacks << " spearman)\n";
        } else if (*graphgen) {
            graphgen_cmd.profiles_path = graphgen_profiles;
            graphgen_cmd.affinity_path = graphgen_affinity;
            graphgen_cmd.arch_path = graphgen_arch;
            graphgen_cmd.precedence_path = graphgen_precedence;
            graphgen_cmd.conditional_path = graphgen_conditional;
            graphgen_cmd.out_dir = graphgen_out_dir;
            graphgen_cmd.budgets = graphgen_budgets;
            graphgen_cmd.solver = solver_choice(graphgen_flags);
            graphgen_cmd.exact_cap = graphgen_flags.exact_cap;
            graphgen_cmd.ga = ga_params(graphgen_flags);
            const mtsched::GraphgenOutcome outcome = mtsched::run_graphgen(graphgen_cmd);
            for (const std::string& warning : outcome.warnings)
                std::cerr << "warning: " << warning << "\n";
            std::cout << "graphs=" << outcome.num_graphs
                      << " selected=" << outcome.selected.graph.canonical_key()
                      << " variety=" << outcome.selected.variety
                      << " model_size=" << outcome.selected.model_size
                      << " exec_cost=" << outcome.selected.exec_cost << "\n";
            std::cout << "wrote " << outcome.scores_path.string() << ", "
                      << outcome.tradeoff_path.string() << ", "
                      << outcome.selected_path.string() << "\n";
        } else if (*order) {
            order_cmd.cost_matrix_path = order_costs;
            order_cmd.graph_path = order_graph;
            order_cmd.arch_path = order_arch;
            order_cmd.precedence_path = order_precedence;
            order_cmd.conditional_path = order_conditional;
            order_cmd.objective = order_objective == "tour" ? mtsched::Objective::ClosedTour
                                                            : mtsched::Objective::OpenPath;
            order_cmd.out_path = order_out;
            order_cmd.solver = solver_choice(order_flags);
            order_cmd.exact_cap = order_flags.exact_cap;
            order_cmd.ga = ga_params(order_flags);
            const mtsched::OrderOutcome outcome = mtsched::run_order(order_cmd);
            for (const std::string& warning : outcome.warnings)
                std::cerr << "warning: " << warning << "\n";
            std::cout << "fitness=" << outcome.solution.fitness << " solver="
                      << (outcome.solution.solver == mtsched::SolverKind::Exact ? "exact" : "ga");
            if (outcome.solution.solver == mtsched::SolverKind::Genetic)
                std::cout << " seed=" << outcome.solution.seed
                          << " generations=" << outcome.solution.generations;
            std::cout << " order=";
            for (std::size_t i = 0; i < outcome.solution.order.size(); ++i)
                std::cout << (i ? "," : "") << outcome.solution.order[i];
            std::cout << "\n";
        } else if (*tradeoff) {
            tradeoff_cmd.scores_path = tradeoff_scores;
            tradeoff_cmd.budgets = tradeoff_budgets;
            tradeoff_cmd.out_path = tradeoff_out;
            tradeoff_cmd.selected_out_path = tradeoff_selected;
            const mtsched::TradeoffOutcome outcome = mtsched::run_tradeoff(tradeoff_cmd);
            const mtsched::TradeoffPoint& point = outcome.curve.points[outcome.curve.selected_index];
            std::cout << "points=" << outcome.curve.points.size()
                      << " selected_budget=" << point.budget
                      << " variety_norm=" << point.variety_norm
                      << " cost_norm=" << point.cost_norm << "\n";
        } else if (*bench) {
            mtsched::BenchOptions options;
            options.solver = solver_choice(bench_flags);
            options.exact_cap = bench_flags.exact_cap;
            options.ga = ga_params(bench_flags);
            if (!bench_optima.empty()) options.optima_path = bench_optima;
            std::vector<std::filesystem::path> files(bench_files.begin(), bench_files.end());
            const std::vector<mtsched::BenchRow> rows = mtsched::run_bench(files, options);
            std::cout << mtsched::format_bench_report(rows);
            if (!mtsched::bench_zero_gap(rows)) return 1;
        }
    } catch (const mtsched::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
