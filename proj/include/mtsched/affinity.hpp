#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mtsched/stats.hpp"

namespace mtsched {

// Per-task layer outputs at the branch points: branch_outputs[d] is a K x F_d
// matrix (K samples, F_d features at branch point d), stored as rows.
struct RepresentationProfile {
    std::string task_id;
    std::vector<std::vector<std::vector<double>>> branch_outputs;

    std::size_t num_branch_points() const { return branch_outputs.size(); }
    std::size_t num_samples() const {
        return branch_outputs.empty() ? 0 : branch_outputs[0].size();
    }

    // Throws InputError unless D >= 1, K >= 2 and every branch point is a
    // rectangular K x F_d matrix.
    void validate() const;
};

// Flattened D*K*K tensor of pairwise sample dissimilarities, branch-major
// then row-major in the (a, b) sample indices.
struct DissimilarityProfile {
    std::string task_id;
    std::size_t num_branch_points = 0;
    std::size_t num_samples = 0;
    std::vector<double> tensor;

    double at(std::size_t branch, std::size_t a, std::size_t b) const {
        return tensor[(branch * num_samples + a) * num_samples + b];
    }
    // The K*K slice for one branch point, flattened row-major.
    std::span<const double> slice(std::size_t branch) const {
        return std::span<const double>(tensor).subspan(branch * num_samples * num_samples,
                                                       num_samples * num_samples);
    }
};

// D x n x n pairwise task-affinity scores; symmetric in (i, j), diagonal 1.
struct AffinityTensor {
    std::size_t num_branch_points = 0;
    std::size_t num_tasks = 0;
    std::vector<double> scores;

    double at(std::size_t branch, std::size_t i, std::size_t j) const {
        return scores[(branch * num_tasks + i) * num_tasks + j];
    }
    double& at(std::size_t branch, std::size_t i, std::size_t j) {
        return scores[(branch * num_tasks + i) * num_tasks + j];
    }
};

// Counts of degenerate (zero-variance) inputs that hit the fallback rule.
struct DegenerateStats {
    std::size_t pearson_fallbacks = 0;
    std::size_t spearman_fallbacks = 0;
};

// Step 1: pairwise sample dissimilarity (1 - Pearson) per branch point.
DissimilarityProfile dissimilarity_profile(const RepresentationProfile& profile,
                                           DegeneratePolicy policy = DegeneratePolicy::Fallback,
                                           DegenerateStats* stats = nullptr);

// Step 2: Spearman rank correlation of the two tasks' dissimilarity slices at
// each branch point; every unordered pair is computed once and mirrored, the
// diagonal is 1.
AffinityTensor affinity_tensor(std::span<const RepresentationProfile> profiles,
                               DegeneratePolicy policy = DegeneratePolicy::Fallback,
                               DegenerateStats* stats = nullptr);

AffinityTensor affinity_tensor(std::span<const DissimilarityProfile> profiles,
                               DegeneratePolicy policy = DegeneratePolicy::Fallback,
                               DegenerateStats* stats = nullptr);

} // namespace mtsched
