#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "mtsched/affinity.hpp"
#include "mtsched/costmodel.hpp"
#include "mtsched/ordering.hpp"
#include "mtsched/taskgraph.hpp"
#include "mtsched/tradeoff.hpp"

namespace mtsched::io {

// Structured-document schemas are versioned; readers reject unknown versions.

struct ProfilesDoc {
    std::size_t num_branch_points = 0;
    std::size_t num_samples = 0;
    std::vector<RepresentationProfile> tasks;
};

struct AffinityDoc {
    std::vector<std::string> task_ids;
    AffinityTensor tensor;
};

struct ArchDoc {
    BranchPointConfig config;
    BlockCostProfile costs;
};

struct CostMatrixDoc {
    CostMatrix matrix;
    std::vector<std::pair<int, int>> precedence;
    std::vector<ConditionalArc> conditional;
};

ProfilesDoc read_profiles(const std::filesystem::path& path);
void write_profiles(const std::filesystem::path& path, const ProfilesDoc& doc);

AffinityDoc read_affinity(const std::filesystem::path& path);
void write_affinity(const std::filesystem::path& path, const AffinityDoc& doc);

ArchDoc read_arch(const std::filesystem::path& path);
void write_arch(const std::filesystem::path& path, const ArchDoc& doc);

TaskGraph read_task_graph(const std::filesystem::path& path);
void write_task_graph(const std::filesystem::path& path, const TaskGraph& graph);

CostMatrixDoc read_cost_matrix(const std::filesystem::path& path);
void write_cost_matrix(const std::filesystem::path& path, const CostMatrixDoc& doc);

std::vector<GraphScoreRecord> read_scores(const std::filesystem::path& path);
void write_scores(const std::filesystem::path& path, std::span<const GraphScoreRecord> records);

OrderingSolution read_solution(const std::filesystem::path& path);
void write_solution(const std::filesystem::path& path, const OrderingSolution& solution);

TradeoffCurve read_tradeoff_tsv(const std::filesystem::path& path,
                                std::vector<std::string>* graph_keys = nullptr);
void write_tradeoff_tsv(const std::filesystem::path& path, const TradeoffCurve& curve,
                        std::span<const GraphScoreRecord> scored);

// Text sidecars: one "i j" (precedence) or "i j p" (conditional) per line;
// blank lines and '#' comments are ignored.
std::vector<std::pair<int, int>> read_precedence_file(const std::filesystem::path& path);
std::vector<ConditionalArc> read_conditional_file(const std::filesystem::path& path);

} // namespace mtsched::io
