#ifndef PBOPS_EXPERIMENT_SERIES_HPP
#define PBOPS_EXPERIMENT_SERIES_HPP

#include <algorithm>
#include <limits>
#include <utility>
#include <vector>

namespace pbops {

/// A sampled scalar sequence (index, value) with running extremum estimators.
struct ExperimentSeries {
    std::vector<std::pair<double, double>> points;

    void push(double index, double value) { points.emplace_back(index, value); }

    double running_max() const {
        double m = -std::numeric_limits<double>::infinity();
        for (const auto& [i, v] : points) m = std::max(m, v);
        return m;
    }

    /// Max over the final quarter of points.
    double tail_max() const {
        double m = -std::numeric_limits<double>::infinity();
        if (points.empty()) return m;
        const std::size_t quarter = std::max<std::size_t>(1, points.size() / 4);
        const std::size_t start = points.size() - quarter;
        for (std::size_t i = start; i < points.size(); ++i) m = std::max(m, points[i].second);
        return m;
    }

    /// Index (first component) at which the running max is attained.
    double argmax_index() const {
        double m = -std::numeric_limits<double>::infinity();
        double arg = 0.0;
        for (const auto& [i, v] : points)
            if (v > m) {
                m = v;
                arg = i;
            }
        return arg;
    }
};

} // namespace pbops

#endif
