#include "mtsched/pipeline.hpp"

#include <algorithm>

#include "mtsched/error.hpp"

namespace mtsched {

namespace {

struct LoadedAffinity {
    io::AffinityDoc doc;
    DegenerateStats degenerate;
};

LoadedAffinity load_affinity(const std::filesystem::path& profiles_path,
                             const std::filesystem::path& affinity_path) {
    if (!affinity_path.empty() && !profiles_path.empty())
        throw InputError("give either a profiles file or an affinity file, not both");
    LoadedAffinity out;
    if (!affinity_path.empty()) {
        out.doc = io::read_affinity(affinity_path);
        return out;
    }
    if (profiles_path.empty())
        throw InputError("a profiles file or an affinity file is required");
    const io::ProfilesDoc profiles = io::read_profiles(profiles_path);
    for (const RepresentationProfile& task : profiles.tasks)
        out.doc.task_ids.push_back(task.task_id);
    out.doc.tensor = affinity_tensor(std::span<const RepresentationProfile>(profiles.tasks),
                                     DegeneratePolicy::Fallback, &out.degenerate);
    return out;
}

void check_constraint_indices(const std::vector<std::pair<int, int>>& precedence,
                              const std::vector<ConditionalArc>& conditional, int n) {
    for (const auto& [before, after] : precedence)
        if (before < 0 || before >= n || after < 0 || after >= n)
            throw InputError("precedence pair (" + std::to_string(before) + ", " +
                             std::to_string(after) + ") out of range for " + std::to_string(n) +
                             " tasks");
    for (const ConditionalArc& arc : conditional)
        if (arc.before < 0 || arc.before >= n || arc.after < 0 || arc.after >= n)
            throw InputError("conditional pair (" + std::to_string(arc.before) + ", " +
                             std::to_string(arc.after) + ") out of range for " +
                             std::to_string(n) + " tasks");
}

OrderingSolution solve(const OrderingProblem& problem, SolverChoice choice, int exact_cap,
                       const GaParams& ga) {
    const bool exact = choice == SolverChoice::Exact ||
                       (choice == SolverChoice::Auto && problem.num_tasks() <= exact_cap);
    if (exact) return solve_exact(problem, exact_cap);
    return solve_ga(problem, ga);
}

} // namespace

AffinityOutcome run_affinity(const AffinityCommand& command) {
    const io::ProfilesDoc profiles = io::read_profiles(command.profiles_path);

    io::AffinityDoc doc;
    for (const RepresentationProfile& task : profiles.tasks) doc.task_ids.push_back(task.task_id);

    AffinityOutcome outcome;
    doc.tensor = affinity_tensor(std::span<const RepresentationProfile>(profiles.tasks),
                                 DegeneratePolicy::Fallback, &outcome.degenerate);
    io::write_affinity(command.out_path, doc);

    outcome.num_tasks = doc.tensor.num_tasks;
    outcome.num_branch_points = doc.tensor.num_branch_points;
    outcome.num_samples = profiles.num_samples;
    return outcome;
}

std::vector<GraphScoreRecord> score_graphs(const std::vector<TaskGraph>& graphs,
                                           const AffinityTensor& affinity,
                                           const BranchPointConfig& cfg,
                                           const BlockCostProfile& costs,
                                           const std::vector<std::pair<int, int>>& precedence,
                                           const std::vector<ConditionalArc>& conditional,
                                           SolverChoice solver, int exact_cap,
                                           const GaParams& ga) {
    std::vector<GraphScoreRecord> records;
    records.reserve(graphs.size());
    for (const TaskGraph& graph : graphs) {
        GraphScoreRecord record;
        record.graph = graph;
        record.variety = variety_score(graph, affinity);
        record.model_size = model_size(graph, cfg, costs);

        OrderingProblem problem;
        problem.costs = cost_matrix(graph, cfg, costs);
        problem.precedence = precedence;
        problem.conditional = conditional;
        problem.objective = Objective::OpenPath;
        const OrderingSolution solution = solve(problem, solver, exact_cap, ga);

        record.exec_cost =
            full_path_cost(graph, cfg, costs, solution.order.front()) + solution.fitness;
        records.push_back(std::move(record));
    }
    return records;
}

GraphgenOutcome run_graphgen(const GraphgenCommand& command) {
    LoadedAffinity affinity = load_affinity(command.profiles_path, command.affinity_path);
    const io::ArchDoc arch = io::read_arch(command.arch_path);

    const auto n = static_cast<int>(affinity.doc.tensor.num_tasks);
    const auto d = static_cast<int>(affinity.doc.tensor.num_branch_points);
    if (command.branch_points != d)
        throw InputError("branch points set to " + std::to_string(command.branch_points) +
                         " but the affinity tensor has " + std::to_string(d));
    if (arch.config.depth() != d)
        throw InputError("architecture has " + std::to_string(arch.config.depth()) +
                         " branch layers but the affinity tensor has " + std::to_string(d));

    std::vector<std::pair<int, int>> precedence;
    std::vector<ConditionalArc> conditional;
    if (!command.precedence_path.empty())
        precedence = io::read_precedence_file(command.precedence_path);
    if (!command.conditional_path.empty())
        conditional = io::read_conditional_file(command.conditional_path);
    check_constraint_indices(precedence, conditional, n);

    const std::vector<TaskGraph> graphs =
        enumerate_task_graphs(n, d, command.enumeration_cap);
    const std::vector<GraphScoreRecord> records =
        score_graphs(graphs, affinity.doc.tensor, arch.config, arch.costs, precedence,
                     conditional, command.solver, command.exact_cap, command.ga);

    GraphgenOutcome outcome;
    outcome.num_graphs = records.size();
    if (affinity.degenerate.pearson_fallbacks + affinity.degenerate.spearman_fallbacks > 0)
        outcome.warnings.push_back("degenerate (zero-variance) activations were mapped through "
                                   "the fallback correlation rule");

    std::filesystem::create_directories(command.out_dir);
    outcome.scores_path = command.out_dir / "graph_scores.jsonl";
    outcome.tradeoff_path = command.out_dir / "tradeoff.tsv";
    outcome.selected_path = command.out_dir / "selected_graph.json";
    io::write_scores(outcome.scores_path, records);

    const std::vector<std::int64_t> budgets =
        command.budgets.empty()
            ? default_budget_grid(records, command.budget_count)
            : command.budgets;
    TradeoffCurve curve = sweep(records, budgets);
    for (const std::string& warning : curve.warnings) outcome.warnings.push_back(warning);

    std::size_t selected_graph_index;
    if (curve.points.size() >= 2) {
        selected_graph_index = select_intersection(curve).graph_index;
    } else {
        curve.points.front().selected = true;
        curve.selected_index = 0;
        selected_graph_index = curve.points.front().graph_index;
    }
    io::write_tradeoff_tsv(outcome.tradeoff_path, curve, records);

    outcome.selected = records[selected_graph_index];
    io::write_task_graph(outcome.selected_path, outcome.selected.graph);
    return outcome;
}

OrderOutcome run_order(const OrderCommand& command) {
    OrderingProblem problem;
    problem.objective = command.objective;

    if (!command.cost_matrix_path.empty()) {
        if (!command.graph_path.empty() || !command.arch_path.empty())
            throw InputError("give either a cost matrix or a graph plus arch costs, not both");
        io::CostMatrixDoc doc = io::read_cost_matrix(command.cost_matrix_path);
        problem.costs = std::move(doc.matrix);
        problem.precedence = std::move(doc.precedence);
        problem.conditional = std::move(doc.conditional);
    } else {
        if (command.graph_path.empty() || command.arch_path.empty())
            throw InputError("order needs a cost matrix file, or a graph file plus an arch file");
        const TaskGraph graph = io::read_task_graph(command.graph_path);
        const io::ArchDoc arch = io::read_arch(command.arch_path);
        problem.costs = cost_matrix(graph, arch.config, arch.costs);
    }

    if (!command.precedence_path.empty())
        for (const auto& pair : io::read_precedence_file(command.precedence_path))
            problem.precedence.push_back(pair);
    if (!command.conditional_path.empty())
        for (const ConditionalArc& arc : io::read_conditional_file(command.conditional_path))
            problem.conditional.push_back(arc);
    check_constraint_indices(problem.precedence, problem.conditional, problem.num_tasks());
    problem.validate();

    OrderOutcome outcome;
    outcome.solution = solve(problem, command.solver, command.exact_cap, command.ga);
    if (!command.out_path.empty()) io::write_solution(command.out_path, outcome.solution);
    return outcome;
}

TradeoffOutcome run_tradeoff(const TradeoffCommand& command) {
    const std::vector<GraphScoreRecord> records = io::read_scores(command.scores_path);
    if (records.empty()) throw InputError(command.scores_path.string() + ": no score records");

    const std::vector<std::int64_t> budgets =
        command.budgets.empty() ? default_budget_grid(records, command.budget_count)
                                : command.budgets;

    TradeoffOutcome outcome;
    outcome.curve = sweep(records, budgets);
    std::size_t selected_graph_index;
    if (outcome.curve.points.size() >= 2) {
        selected_graph_index = select_intersection(outcome.curve).graph_index;
    } else {
        outcome.curve.points.front().selected = true;
        outcome.curve.selected_index = 0;
        selected_graph_index = outcome.curve.points.front().graph_index;
    }
    outcome.selected = records[selected_graph_index];

    if (!command.out_path.empty()) io::write_tradeoff_tsv(command.out_path, outcome.curve, records);
    if (!command.selected_out_path.empty())
        io::write_task_graph(command.selected_out_path, outcome.selected.graph);
    return outcome;
}

} // namespace mtsched
