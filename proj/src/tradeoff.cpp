#include "mtsched/tradeoff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mtsched/error.hpp"

namespace mtsched {

namespace {

double min_max_norm(double value, double low, double high) {
    return high > low ? (value - low) / (high - low) : 0.0;
}

} // namespace

TradeoffCurve sweep(std::span<const GraphScoreRecord> scored,
                    std::span<const std::int64_t> budgets) {
    if (scored.empty()) throw InputError("tradeoff sweep: no scored graphs");
    if (budgets.empty()) throw InputError("tradeoff sweep: no budgets");

    std::vector<std::int64_t> grid(budgets.begin(), budgets.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    TradeoffCurve curve;
    for (const std::int64_t budget : grid) {
        bool found = false;
        std::size_t best = 0;
        for (std::size_t g = 0; g < scored.size(); ++g) {
            if (scored[g].model_size > budget) continue;
            if (!found) {
                best = g;
                found = true;
                continue;
            }
            const GraphScoreRecord& challenger = scored[g];
            const GraphScoreRecord& incumbent = scored[best];
            if (challenger.variety != incumbent.variety) {
                if (challenger.variety < incumbent.variety) best = g;
            } else if (challenger.exec_cost != incumbent.exec_cost) {
                if (challenger.exec_cost < incumbent.exec_cost) best = g;
            } else if (challenger.graph.canonical_key() < incumbent.graph.canonical_key()) {
                best = g;
            }
        }
        if (!found) {
            curve.warnings.push_back("budget " + std::to_string(budget) +
                                     " skipped: no graph fits");
            continue;
        }
        TradeoffPoint point;
        point.budget = budget;
        point.graph_index = best;
        point.variety = scored[best].variety;
        point.exec_cost = scored[best].exec_cost;
        curve.points.push_back(point);
    }

    if (curve.points.empty())
        throw InputError("tradeoff sweep: no budget admits any graph");

    double v_low = std::numeric_limits<double>::infinity(), v_high = -v_low;
    double c_low = v_low, c_high = -v_low;
    for (const TradeoffPoint& point : curve.points) {
        v_low = std::min(v_low, point.variety);
        v_high = std::max(v_high, point.variety);
        c_low = std::min(c_low, point.exec_cost);
        c_high = std::max(c_high, point.exec_cost);
    }
    for (TradeoffPoint& point : curve.points) {
        point.variety_norm = min_max_norm(point.variety, v_low, v_high);
        point.cost_norm = min_max_norm(point.exec_cost, c_low, c_high);
    }
    return curve;
}

const TradeoffPoint& select_intersection(TradeoffCurve& curve) {
    if (curve.points.size() < 2)
        throw InputError("tradeoff selection: need at least 2 sweep points, got " +
                         std::to_string(curve.points.size()));

    std::size_t best = 0;
    double best_gap = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < curve.points.size(); ++p) {
        const double gap = std::fabs(curve.points[p].variety_norm - curve.points[p].cost_norm);
        if (gap < best_gap) {  // ties keep the smaller budget
            best_gap = gap;
            best = p;
        }
    }
    for (TradeoffPoint& point : curve.points) point.selected = false;
    curve.points[best].selected = true;
    curve.selected_index = best;
    return curve.points[best];
}

std::vector<std::int64_t> default_budget_grid(std::span<const GraphScoreRecord> scored,
                                              std::size_t count) {
    if (scored.empty()) throw InputError("budget grid: no scored graphs");
    if (count < 2) throw InputError("budget grid: need at least 2 budgets");

    std::int64_t low = scored.front().model_size, high = low;
    for (const GraphScoreRecord& record : scored) {
        low = std::min(low, record.model_size);
        high = std::max(high, record.model_size);
    }
    if (low == high) return {low};

    std::vector<std::int64_t> grid;
    const double log_low = std::log(static_cast<double>(std::max<std::int64_t>(low, 1)));
    const double log_high = std::log(static_cast<double>(std::max<std::int64_t>(high, 1)));
    for (std::size_t i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(count - 1);
        const double value = std::exp(log_low + t * (log_high - log_low));
        grid.push_back(static_cast<std::int64_t>(std::llround(value)));
    }
    grid.front() = low;
    grid.back() = high;
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

} // namespace mtsched
