#include "mtsched/affinity.hpp"

#include "mtsched/error.hpp"

namespace mtsched {

void RepresentationProfile::validate() const {
    if (branch_outputs.empty())
        throw InputError("profile '" + task_id + "': needs at least one branch point");
    const std::size_t k = branch_outputs[0].size();
    if (k < 2)
        throw InputError("profile '" + task_id + "': needs at least 2 samples, got " +
                         std::to_string(k));
    for (std::size_t d = 0; d < branch_outputs.size(); ++d) {
        const auto& mat = branch_outputs[d];
        if (mat.size() != k)
            throw InputError("profile '" + task_id + "': branch point " + std::to_string(d) +
                             " has " + std::to_string(mat.size()) + " rows, expected " +
                             std::to_string(k));
        if (mat[0].empty())
            throw InputError("profile '" + task_id + "': branch point " + std::to_string(d) +
                             " has empty feature rows");
        for (const auto& row : mat) {
            if (row.size() != mat[0].size())
                throw InputError("profile '" + task_id + "': ragged rows at branch point " +
                                 std::to_string(d));
        }
    }
}

DissimilarityProfile dissimilarity_profile(const RepresentationProfile& profile,
                                           DegeneratePolicy policy, DegenerateStats* stats) {
    profile.validate();
    const std::size_t d = profile.num_branch_points();
    const std::size_t k = profile.num_samples();

    DissimilarityProfile out;
    out.task_id = profile.task_id;
    out.num_branch_points = d;
    out.num_samples = k;
    out.tensor.assign(d * k * k, 0.0);

    for (std::size_t branch = 0; branch < d; ++branch) {
        const auto& mat = profile.branch_outputs[branch];
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = a + 1; b < k; ++b) {
                bool degenerate = false;
                const double value = pearson_dissimilarity(mat[a], mat[b], policy, &degenerate);
                if (degenerate && stats) ++stats->pearson_fallbacks;
                out.tensor[(branch * k + a) * k + b] = value;
                out.tensor[(branch * k + b) * k + a] = value;
            }
        }
    }
    return out;
}

AffinityTensor affinity_tensor(std::span<const DissimilarityProfile> profiles,
                               DegeneratePolicy policy, DegenerateStats* stats) {
    if (profiles.size() < 2)
        throw InputError("affinity: need at least 2 task profiles, got " +
                         std::to_string(profiles.size()));
    const std::size_t d = profiles[0].num_branch_points;
    const std::size_t k = profiles[0].num_samples;
    for (const auto& p : profiles) {
        if (p.num_branch_points != d || p.num_samples != k)
            throw InputError("affinity: profile '" + p.task_id +
                             "' disagrees on tensor shape (D or K mismatch)");
    }

    const std::size_t n = profiles.size();
    AffinityTensor tensor;
    tensor.num_branch_points = d;
    tensor.num_tasks = n;
    tensor.scores.assign(d * n * n, 0.0);

    for (std::size_t branch = 0; branch < d; ++branch) {
        for (std::size_t i = 0; i < n; ++i) tensor.at(branch, i, i) = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                bool degenerate = false;
                const double s = spearman(profiles[i].slice(branch), profiles[j].slice(branch),
                                          policy, &degenerate);
                if (degenerate && stats) ++stats->spearman_fallbacks;
                tensor.at(branch, i, j) = s;
                tensor.at(branch, j, i) = s;
            }
        }
    }
    return tensor;
}

AffinityTensor affinity_tensor(std::span<const RepresentationProfile> profiles,
                               DegeneratePolicy policy, DegenerateStats* stats) {
    std::vector<DissimilarityProfile> dps;
    dps.reserve(profiles.size());
    for (const auto& p : profiles) dps.push_back(dissimilarity_profile(p, policy, stats));
    return affinity_tensor(std::span<const DissimilarityProfile>(dps), policy, stats);
}

} // namespace mtsched
