#pragma once

// Independent reference implementations used to check the library: a naive
// per-candidate split search, an exhaustive pruning-objective enumerator and
// a small adaptive quadrature. These deliberately avoid the library's scan
// machinery.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "covrt/dataset.hpp"
#include "covrt/splitting.hpp"
#include "covrt/tree.hpp"

namespace oracles {

// All candidate midpoints of one feature within a row set.
inline std::vector<double> thresholds(const covrt::Dataset& data,
                                      const std::vector<int>& rows, int j) {
    std::vector<double> values;
    for (int i : rows) values.push_back(data.features(i, j));
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    std::vector<double> out;
    for (std::size_t k = 1; k < values.size(); ++k)
        out.push_back((values[k - 1] + values[k]) / 2.0);
    return out;
}

// Naive best split: re-partitions the node and recomputes counts and sums
// from scratch for every (feature, threshold) pair. Sums accumulate over the
// left side in ascending value order and the right side as total - left,
// the same arithmetic convention the criteria are defined with.
inline std::optional<covrt::SplitCandidate> naive_best_split(
    const covrt::Dataset& data, const std::vector<int>& rows,
    covrt::CriterionKind criterion) {
    double parent_risk = 0;
    if (criterion == covrt::CriterionKind::cart) {
        covrt::NodeRegion region{rows, 0};
        parent_risk = covrt::node_mean_and_risk(data, region).second;
    }
    std::optional<covrt::SplitCandidate> best;
    for (int j = 0; j < data.n_cols(); ++j) {
        // ascending (value, y) pairs, ties in original row order
        std::vector<std::pair<double, double>> vy;
        for (int i : rows) vy.emplace_back(data.features(i, j), data.response[i]);
        std::stable_sort(vy.begin(), vy.end(), [](const auto& a, const auto& b) {
            return a.first < b.first;
        });
        for (double s : thresholds(data, rows, j)) {
            int n_left = 0;
            double sum_left = 0;
            double sq_left = 0;
            double total = 0;
            double total_sq = 0;
            for (const auto& [v, y] : vy) {
                total += y;
                total_sq += y * y;
                if (v <= s) {
                    ++n_left;
                    sum_left += y;
                    sq_left += y * y;
                }
            }
            const int n_right = static_cast<int>(vy.size()) - n_left;
            const double sum_right = total - sum_left;
            double value;
            if (criterion == covrt::CriterionKind::covrt)
                value = covrt::covrt_criterion(n_left, n_right, sum_left, sum_right);
            else
                value = covrt::cart_impurity_gain(parent_risk, n_left, n_right,
                                                  sum_left, sq_left, sum_right,
                                                  total_sq - sq_left);
            if (!best || value > best->criterion_value) {
                covrt::SplitCandidate c;
                c.feature = j;
                c.threshold = s;
                c.n_left = n_left;
                c.n_right = n_right;
                c.sum_left = sum_left;
                c.sum_right = sum_right;
                c.criterion_value = value;
                best = c;
            }
        }
    }
    if (best && best->criterion_value == 0) return std::nullopt;
    return best;
}

// Every collapse-closed subtree of `tree` as (leaves, train risk) pairs,
// enumerated recursively: a branch either collapses to its root node or
// combines any subtree choice of both children.
inline std::vector<std::pair<int, double>> all_subtrees(const covrt::Tree& tree) {
    const double n_total = static_cast<double>(tree.root().n);
    std::function<std::vector<std::pair<int, double>>(int)> options =
        [&](int id) -> std::vector<std::pair<int, double>> {
        const covrt::Node& node = tree.nodes[static_cast<std::size_t>(id)];
        std::vector<std::pair<int, double>> out = {
            {1, (static_cast<double>(node.n) / n_total) * node.risk}};
        if (node.is_leaf) return out;
        for (const auto& [l_leaves, l_risk] : options(node.left))
            for (const auto& [r_leaves, r_risk] : options(node.right))
                out.emplace_back(l_leaves + r_leaves, l_risk + r_risk);
        return out;
    };
    return options(0);
}

// Adaptive trapezoid integration to absolute tolerance `tol`.
inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-10, int depth = 0) {
    const double m = 0.5 * (a + b);
    const double coarse = 0.5 * (b - a) * (f(a) + f(b));
    const double fine =
        0.25 * (b - a) * (f(a) + f(m)) + 0.25 * (b - a) * (f(m) + f(b));
    if (depth > 40 || std::abs(fine - coarse) < 3.0 * tol) return fine;
    return integrate(f, a, m, tol / 2, depth + 1) +
           integrate(f, m, b, tol / 2, depth + 1);
}

inline double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    if (scale == 0) return 0;
    return std::abs(a - b) / scale;
}

}  // namespace oracles
