#include "mtsched/bench.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <map>
#include <sstream>

#include "mtsched/error.hpp"
#include "mtsched/io.hpp"
#include "mtsched/tsplib.hpp"

namespace mtsched {

namespace {

std::string normalized_name(std::string name) {
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (const char* suffix : {".sop", ".tsp", ".atsp"}) {
        const std::size_t len = std::string(suffix).size();
        if (name.size() > len && name.ends_with(suffix)) {
            name.resize(name.size() - len);
            break;
        }
    }
    return name;
}

std::map<std::string, double> known_optima(const BenchOptions& options) {
    std::map<std::string, double> table = {
        {"five", 19.0},   {"p01", 291.0},   {"gr17", 2085.0},
        {"esc07", 2125.0}, {"esc11", 2075.0}, {"br17.12", 55.0},
    };
    if (options.optima_path) {
        std::ifstream stream(*options.optima_path);
        if (!stream) throw InputError("cannot open optima file: " + options.optima_path->string());
        std::string name;
        double value = 0.0;
        while (stream >> name >> value) table[normalized_name(name)] = value;
    }
    return table;
}

} // namespace

std::vector<BenchRow> run_bench(std::span<const std::filesystem::path> files,
                                const BenchOptions& options) {
    const std::map<std::string, double> optima = known_optima(options);

    std::vector<BenchRow> rows;
    for (const std::filesystem::path& file : files) {
        BenchRow row;
        row.file = file.string();
        row.name = file.stem().string();
        try {
            OrderingProblem problem;
            if (file.extension() == ".json") {
                // explicit measured cost matrix
                io::CostMatrixDoc doc = io::read_cost_matrix(file);
                problem.costs = std::move(doc.matrix);
                problem.precedence = std::move(doc.precedence);
                problem.conditional = std::move(doc.conditional);
                problem.objective = Objective::ClosedTour;
                problem.validate();
                row.nodes = problem.num_tasks();
                row.pre = static_cast<int>(problem.precedence.size());
            } else {
                const TsplibInstance instance = load_tsplib_file(file);
                row.name = instance.name.empty() ? row.name : instance.name;
                row.nodes = instance.dimension;
                row.pre = instance.kind == InstanceKind::Sop
                              ? instance.num_nontrivial_precedence()
                              : static_cast<int>(instance.precedence.size());
                problem = to_problem(instance);
            }

            const auto it = optima.find(normalized_name(row.name));
            if (it != optima.end()) {
                row.has_optimum = true;
                row.optimum = it->second;
            }
            const bool exact = options.solver == SolverChoice::Exact ||
                               (options.solver == SolverChoice::Auto &&
                                problem.num_tasks() <= options.exact_cap);

            const auto start = std::chrono::steady_clock::now();
            const OrderingSolution solution = exact ? solve_exact(problem, options.exact_cap)
                                                    : solve_ga(problem, options.ga);
            row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                              .count();

            row.solved = true;
            row.found = solution.fitness;
            row.solver = exact ? "exact" : "ga";
            if (row.has_optimum && row.optimum > 0.0)
                row.gap_percent = 100.0 * (row.found - row.optimum) / row.optimum;
            else if (row.has_optimum)
                row.gap_percent = row.found == row.optimum ? 0.0 : 100.0;
        } catch (const Error& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

bool bench_zero_gap(std::span<const BenchRow> rows) {
    for (const BenchRow& row : rows) {
        if (!row.error.empty()) return false;
        if (row.has_optimum && row.solved && row.gap_percent != 0.0) return false;
    }
    return true;
}

std::string format_bench_report(std::span<const BenchRow> rows) {
    std::ostringstream out;
    out << "name\tnodes\tpre\toptimal_known\tfound\tgap%\tsolver\tseconds\n";
    out.precision(6);
    for (const BenchRow& row : rows) {
        if (!row.error.empty()) {
            out << row.name << "\tERROR\t" << row.error << "\n";
            continue;
        }
        out << row.name << '\t' << row.nodes << '\t' << row.pre << '\t';
        if (row.has_optimum)
            out << row.optimum;
        else
            out << "n/a";
        out << '\t' << row.found << '\t';
        if (row.has_optimum)
            out << row.gap_percent;
        else
            out << "n/a";
        out << '\t' << row.solver << '\t' << row.seconds << "\n";
    }
    return out.str();
}

} // namespace mtsched
