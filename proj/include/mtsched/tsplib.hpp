#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mtsched/ordering.hpp"

namespace mtsched {

enum class EdgeWeightFormat { FullMatrix, UpperRow, LowerDiagRow, UpperDiagRow };
enum class InstanceKind { Tsp, Sop };

std::string to_string(EdgeWeightFormat format);

// An explicit-matrix TSP/SOP instance. SOP entries of -1 at (i, j) mean j must
// precede i; they are stored as precedence pairs and the arc weight becomes 0.
struct TsplibInstance {
    std::string name;
    int dimension = 0;
    EdgeWeightFormat format = EdgeWeightFormat::FullMatrix;
    InstanceKind kind = InstanceKind::Tsp;
    std::vector<double> weights;  // fully expanded n x n
    std::vector<std::pair<int, int>> precedence;

    double weight(int i, int j) const {
        return weights[static_cast<std::size_t>(i) * dimension + j];
    }

    // SOP convention: node 0 is the start dummy and n-1 the end dummy;
    // counts the precedence pairs between real nodes.
    int num_nontrivial_precedence() const;
};

// Parses the keyword/section layout; errors name the offending line.
TsplibInstance parse_tsplib(std::string_view text);

TsplibInstance load_tsplib_file(const std::filesystem::path& path);

// Re-serializes with EDGE_WEIGHT_FORMAT: FULL_MATRIX (precedence pairs become
// -1 entries again for SOP instances).
std::string serialize_full_matrix(const TsplibInstance& instance);

// Closed-tour ordering problem over the instance; `overlay` adds conditional
// arcs. Overlay pairs that are not precedence pairs are allowed but reported
// through `warnings`.
OrderingProblem to_problem(const TsplibInstance& instance,
                           std::span<const ConditionalArc> overlay = {},
                           std::vector<std::string>* warnings = nullptr);

} // namespace mtsched
