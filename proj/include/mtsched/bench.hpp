#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mtsched/ordering.hpp"

namespace mtsched {

enum class SolverChoice { Auto, Exact, Genetic };

struct BenchOptions {
    SolverChoice solver = SolverChoice::Auto;  // Auto: exact up to the cap, then genetic
    int exact_cap = kDefaultExactCap;
    GaParams ga;
    std::optional<std::filesystem::path> optima_path;  // lines: "name value"
};

struct BenchRow {
    std::string name;
    std::string file;
    int nodes = 0;
    int pre = 0;
    bool has_optimum = false;
    double optimum = 0.0;
    bool solved = false;
    double found = 0.0;
    double gap_percent = 0.0;
    std::string solver;
    std::string error;  // parse/solve failure, row kept
    double seconds = 0.0;
};

// Solves each TSPLIB/SOP file as a closed tour and compares against the known
// optimum (built-in table for the standard instances, extendable via
// BenchOptions::optima_path). Parse failures are reported per file; the rest
// of the files still run.
std::vector<BenchRow> run_bench(std::span<const std::filesystem::path> files,
                                const BenchOptions& options);

// True iff every solved row with a known optimum hit it exactly.
bool bench_zero_gap(std::span<const BenchRow> rows);

std::string format_bench_report(std::span<const BenchRow> rows);

} // namespace mtsched
