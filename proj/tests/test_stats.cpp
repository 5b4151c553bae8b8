#include <doctest.h>

#include <random>
#include <vector>

#include "mtsched/error.hpp"
#include "mtsched/stats.hpp"
#include "oracles.hpp"

using mtsched::DegeneratePolicy;

TEST_CASE("average ranks with ties") {
    const std::vector<double> v = {3.0, 1.0, 4.0, 1.0, 5.0};
    const std::vector<double> expected = {3.0, 1.5, 4.0, 1.5, 5.0};
    CHECK(mtsched::average_ranks(v) == expected);

    const std::vector<double> all_tied = {2.0, 2.0, 2.0};
    CHECK(mtsched::average_ranks(all_tied) == std::vector<double>{2.0, 2.0, 2.0});
}

TEST_CASE("pearson dissimilarity on perfectly correlated vectors") {
    const std::vector<double> x = {1, 2, 3};
    CHECK(mtsched::pearson_dissimilarity(x, std::vector<double>{2, 4, 6}) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(mtsched::pearson_dissimilarity(x, std::vector<double>{3, 2, 1}) ==
          doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("pearson dissimilarity against the textbook formula") {
    const std::vector<double> x = {1, 2, 3, 4};
    const std::vector<double> y = {1, 3, 2, 4};
    // 1 - r with r = 0.8 for this pair
    CHECK(mtsched::pearson_dissimilarity(x, y) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(mtsched::pearson_dissimilarity(x, y) ==
          doctest::Approx(1.0 - oracle::pearson_textbook(x, y)).epsilon(1e-12));
}

TEST_CASE("spearman on monotone vectors") {
    const std::vector<double> u = {1, 5, 9};
    CHECK(mtsched::spearman(u, std::vector<double>{2, 6, 10}) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mtsched::spearman(u, std::vector<double>{10, 6, 2}) ==
          doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("spearman with ties against the rank-then-pearson oracle") {
    const std::vector<double> u = {1, 2, 3, 3};
    const std::vector<double> v = {1, 3, 2, 2};
    // ranks (1, 2, 3.5, 3.5) vs (1, 4, 2.5, 2.5) correlate at exactly 1/3
    CHECK(mtsched::spearman(u, v) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(mtsched::spearman(u, v) ==
          doctest::Approx(oracle::spearman_rank_then_pearson(u, v)).epsilon(1e-12));
}

TEST_CASE("degenerate inputs throw by default and fall back on request") {
    const std::vector<double> constant = {4, 4, 4};
    const std::vector<double> moving = {1, 2, 3};

    CHECK_THROWS_AS(mtsched::pearson(constant, moving), mtsched::DegenerateInputError);
    CHECK_THROWS_AS(mtsched::spearman(constant, moving), mtsched::DegenerateInputError);

    bool degenerate = false;
    CHECK(mtsched::pearson(constant, moving, DegeneratePolicy::Fallback, &degenerate) == 0.0);
    CHECK(degenerate);
    CHECK(mtsched::pearson(constant, std::vector<double>{7, 7, 7},
                           DegeneratePolicy::Fallback) == 1.0);
    CHECK(mtsched::pearson_dissimilarity(constant, moving, DegeneratePolicy::Fallback) == 1.0);
    CHECK(mtsched::pearson_dissimilarity(constant, std::vector<double>{9, 9, 9},
                                         DegeneratePolicy::Fallback) == 0.0);
}

TEST_CASE("length validation") {
    CHECK_THROWS_AS(mtsched::pearson(std::vector<double>{1, 2}, std::vector<double>{1, 2, 3}),
                    mtsched::InputError);
    CHECK_THROWS_AS(mtsched::pearson(std::vector<double>{1}, std::vector<double>{2}),
                    mtsched::InputError);
}

TEST_CASE("randomized agreement with the oracles, ties included") {
    std::mt19937_64 rng(20240817);
    for (int iteration = 0; iteration < 200; ++iteration) {
        const std::size_t n = 3 + rng() % 12;
        std::vector<double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            // coarse grid so ties happen regularly
            x[i] = static_cast<double>(rng() % 7);
            y[i] = static_cast<double>(rng() % 7);
        }
        const bool x_const = std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; });
        const bool y_const = std::all_of(y.begin(), y.end(), [&](double v) { return v == y[0]; });
        if (x_const || y_const) continue;

        CHECK(mtsched::pearson(x, y) ==
              doctest::Approx(oracle::pearson_textbook(x, y)).epsilon(1e-9));
        CHECK(mtsched::spearman(x, y) ==
              doctest::Approx(oracle::spearman_rank_then_pearson(x, y)).epsilon(1e-9));
        CHECK(mtsched::average_ranks(x) == oracle::ranks_by_counting(x));
    }
}
