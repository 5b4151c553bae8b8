#pragma once

#include <span>
#include <vector>

namespace mtsched {

// What to do when a correlation input has zero variance. Throw is the strict
// contract of the low-level functions; Fallback keeps profile pipelines total
// on degenerate activations (dead layers): r = 0 when exactly one vector is
// constant, r = 1 when both are.
enum class DegeneratePolicy { Throw, Fallback };

// Average ranks (1-based); tied values share the mean of their positions.
std::vector<double> average_ranks(std::span<const double> values);

// Pearson correlation coefficient, in [-1, 1]. `degenerate`, when given, is
// set to true if the fallback rule was applied.
double pearson(std::span<const double> x, std::span<const double> y,
               DegeneratePolicy policy = DegeneratePolicy::Throw,
               bool* degenerate = nullptr);

// 1 - pearson(x, y), in [0, 2].
double pearson_dissimilarity(std::span<const double> x, std::span<const double> y,
                             DegeneratePolicy policy = DegeneratePolicy::Throw,
                             bool* degenerate = nullptr);

// Pearson correlation of the average-rank vectors, in [-1, 1].
double spearman(std::span<const double> u, std::span<const double> v,
                DegeneratePolicy policy = DegeneratePolicy::Throw,
                bool* degenerate = nullptr);

} // namespace mtsched
