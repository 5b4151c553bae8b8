#include "mtsched/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mtsched/error.hpp"

namespace mtsched {

namespace {

bool all_equal(std::span<const double> v) {
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i] != v[0]) return false;
    }
    return true;
}

void check_lengths(std::span<const double> x, std::span<const double> y, const char* what) {
    if (x.size() != y.size())
        throw InputError(std::string(what) + ": vectors differ in length (" +
                         std::to_string(x.size()) + " vs " + std::to_string(y.size()) + ")");
    if (x.size() < 2)
        throw InputError(std::string(what) + ": need at least 2 observations, got " +
                         std::to_string(x.size()));
}

} // namespace

std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[idx[j + 1]] == values[idx[i]]) ++j;
        // positions i..j (0-based) share the average of ranks i+1..j+1
        const double rank = 0.5 * static_cast<double>(i + 1 + j + 1);
        for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

double pearson(std::span<const double> x, std::span<const double> y,
               DegeneratePolicy policy, bool* degenerate) {
    check_lengths(x, y, "pearson");
    if (degenerate) *degenerate = false;

    const bool x_const = all_equal(x);
    const bool y_const = all_equal(y);
    if (x_const || y_const) {
        if (policy == DegeneratePolicy::Throw)
            throw DegenerateInputError("pearson: zero-variance input vector");
        if (degenerate) *degenerate = true;
        return (x_const && y_const) ? 1.0 : 0.0;
    }

    const std::size_t n = x.size();
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_x += x[i];
        mean_y += y[i];
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);

    double cov = 0.0, var_x = 0.0, var_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mean_x;
        const double dy = y[i] - mean_y;
        cov += dx * dy;
        var_x += dx * dx;
        var_y += dy * dy;
    }

    const double r = cov / std::sqrt(var_x * var_y);
    // rounding can push |r| marginally past 1
    return std::clamp(r, -1.0, 1.0);
}

double pearson_dissimilarity(std::span<const double> x, std::span<const double> y,
                             DegeneratePolicy policy, bool* degenerate) {
    return 1.0 - pearson(x, y, policy, degenerate);
}

double spearman(std::span<const double> u, std::span<const double> v,
                DegeneratePolicy policy, bool* degenerate) {
    check_lengths(u, v, "spearman");
    const std::vector<double> ru = average_ranks(u);
    const std::vector<double> rv = average_ranks(v);
    return pearson(ru, rv, policy, degenerate);
}

} // namespace mtsched
