#include "covrt/splitting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace covrt {

double covrt_criterion(int n_left, int n_right, double sum_left, double sum_right) {
    if (n_left < 1 || n_right < 1)
        throw std::invalid_argument("covrt_criterion: empty side");
    const double n = static_cast<double>(n_left) + static_cast<double>(n_right);
    const double pl = static_cast<double>(n_left) / n;
    const double pr = static_cast<double>(n_right) / n;
    const double diff = sum_left / static_cast<double>(n_left) -
                        sum_right / static_cast<double>(n_right);
    // grouped as (pl*pr)^2 * diff^2 so that swapping sides is bit-exact
    const double plpr = pl * pr;
    return (plpr * plpr) * (diff * diff);
}

double cart_impurity_gain(double parent_risk, int n_left, int n_right,
                          double sum_left, double sum_sq_left,
                          double sum_right, double sum_sq_right) {
    if (n_left < 1 || n_right < 1)
        throw std::invalid_argument("cart_impurity_gain: empty side");
    const double nl = static_cast<double>(n_left);
    const double nr = static_cast<double>(n_right);
    const double n = nl + nr;
    const double mean_l = sum_left / nl;
    const double mean_r = sum_right / nr;
    const double risk_l = std::max(0.0, sum_sq_left / nl - mean_l * mean_l);
    const double risk_r = std::max(0.0, sum_sq_right / nr - mean_r * mean_r);
    const double gain = parent_risk - (nl / n) * risk_l - (nr / n) * risk_r;
    return std::max(0.0, gain);
}

namespace {

// (value, response) pairs of the region's rows for one feature, sorted by
// value; region order is preserved among ties.
void gather_sorted(const Dataset& data, const std::vector<int>& rows, int feature,
                   std::vector<std::pair<double, double>>& out) {
    out.clear();
    out.reserve(rows.size());
    for (int i : rows)
        out.emplace_back(data.features(i, feature), data.response[i]);
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
}

bool constant_response(const Dataset& data, const std::vector<int>& rows) {
    const double first = data.response[rows.front()];
    for (int i : rows)
        if (data.response[i] != first) return false;
    return true;
}

SplitDecision random_split(const Dataset& data, const NodeRegion& region, Rng& rng) {
    SplitDecision decision;
    decision.criterion = CriterionKind::random;
    const auto& rows = region.row_indices;
    const int p = static_cast<int>(data.n_cols());

    std::vector<std::pair<double, double>> vy;
    std::vector<int> eligible;
    std::vector<long> n_midpoints(static_cast<std::size_t>(p), 0);
    for (int j = 0; j < p; ++j) {
        gather_sorted(data, rows, j, vy);
        long distinct = 1;
        for (std::size_t i = 1; i < vy.size(); ++i)
            if (vy[i - 1].first < vy[i].first) ++distinct;
        n_midpoints[static_cast<std::size_t>(j)] = distinct - 1;
        decision.candidates_evaluated += distinct - 1;
        if (distinct >= 2) eligible.push_back(j);
    }
    if (eligible.empty()) return decision;

    const int feature =
        eligible[static_cast<std::size_t>(bounded(rng, eligible.size()))];
    const long pick = static_cast<long>(
        bounded(rng, static_cast<std::uint64_t>(
                         n_midpoints[static_cast<std::size_t>(feature)])));

    gather_sorted(data, rows, feature, vy);
    long boundary = 0;
    double threshold = 0;
    for (std::size_t i = 1; i < vy.size(); ++i) {
        if (vy[i - 1].first < vy[i].first) {
            if (boundary == pick) {
                threshold = (vy[i - 1].first + vy[i].first) / 2.0;
                break;
            }
            ++boundary;
        }
    }

    SplitCandidate best;
    best.feature = feature;
    best.threshold = threshold;
    for (int i : rows) {
        const double y = data.response[i];
        if (data.features(i, feature) <= threshold) {
            ++best.n_left;
            best.sum_left += y;
        } else {
            ++best.n_right;
            best.sum_right += y;
        }
    }
    best.criterion_value = 0;
    decision.best = best;
    return decision;
}

}  // namespace

SplitDecision best_split(const Dataset& data, const NodeRegion& region,
                         CriterionKind criterion, Rng& rng) {
    validate(region, data.n_rows());
    if (region.row_indices.size() < 2)
        throw std::invalid_argument("best_split: region needs at least 2 rows");
    if (criterion == CriterionKind::random) return random_split(data, region, rng);

    SplitDecision decision;
    decision.criterion = criterion;
    const auto& rows = region.row_indices;
    // a pure node has criterion value 0 on every candidate
    if (constant_response(data, rows)) {
        std::vector<std::pair<double, double>> vy;
        for (int j = 0; j < data.n_cols(); ++j) {
            gather_sorted(data, rows, j, vy);
            for (std::size_t i = 1; i < vy.size(); ++i)
                if (vy[i - 1].first < vy[i].first) ++decision.candidates_evaluated;
        }
        return decision;
    }

    double parent_risk = 0;
    if (criterion == CriterionKind::cart)
        parent_risk = node_mean_and_risk(data, region).second;

    const long m = static_cast<long>(rows.size());
    SplitCandidate best;
    double best_value = -1;
    std::vector<std::pair<double, double>> vy;
    for (int j = 0; j < data.n_cols(); ++j) {
        gather_sorted(data, rows, j, vy);
        double total_sum = 0;
        double total_sq = 0;
        for (const auto& [v, y] : vy) {
            total_sum += y;
            total_sq += y * y;
        }
        double sum_left = 0;
        double sq_left = 0;
        for (long l = 1; l < m; ++l) {
            const auto& prev = vy[static_cast<std::size_t>(l - 1)];
            sum_left += prev.second;
            sq_left += prev.second * prev.second;
            if (!(prev.first < vy[static_cast<std::size_t>(l)].first)) continue;
            ++decision.candidates_evaluated;
            const double sum_right = total_sum - sum_left;
            const int nl = static_cast<int>(l);
            const int nr = static_cast<int>(m - l);
            double value;
            if (criterion == CriterionKind::covrt) {
                value = covrt_criterion(nl, nr, sum_left, sum_right);
            } else {
                value = cart_impurity_gain(parent_risk, nl, nr, sum_left, sq_left,
                                           sum_right, total_sq - sq_left);
            }
            if (value > best_value) {
                best_value = value;
                best.feature = j;
                best.threshold =
                    (prev.first + vy[static_cast<std::size_t>(l)].first) / 2.0;
                best.n_left = nl;
                best.n_right = nr;
                best.sum_left = sum_left;
                best.sum_right = sum_right;
                best.criterion_value = value;
            }
        }
    }
    if (best_value > 0) decision.best = best;
    return decision;
}

double max_criterion_value(const Dataset& data, const NodeRegion& region,
                           CriterionKind criterion) {
    if (criterion == CriterionKind::random)
        throw std::invalid_argument("max_criterion_value: random has no value");
    if (region.row_indices.size() < 2) return 0;
    Rng rng(0);
    const SplitDecision decision = best_split(data, region, criterion, rng);
    return decision.best ? decision.best->criterion_value : 0;
}

IgCsIdentity ig_cs_identity_check(const Dataset& data, const NodeRegion& region,
                                  int feature, double threshold) {
    validate(region, data.n_rows());
    if (feature < 0 || feature >= data.n_cols())
        throw std::invalid_argument("ig_cs_identity_check: feature out of range");
    int nl = 0;
    int nr = 0;
    double sum_l = 0;
    double sq_l = 0;
    double sum_r = 0;
    double sq_r = 0;
    for (int i : region.row_indices) {
        const double y = data.response[i];
        if (data.features(i, feature) <= threshold) {
            ++nl;
            sum_l += y;
            sq_l += y * y;
        } else {
            ++nr;
            sum_r += y;
            sq_r += y * y;
        }
    }
    if (nl == 0 || nr == 0)
        throw std::invalid_argument("ig_cs_identity_check: empty daughter");

    IgCsIdentity result;
    result.parent_risk = node_mean_and_risk(data, region).second;
    result.impurity_gain =
        cart_impurity_gain(result.parent_risk, nl, nr, sum_l, sq_l, sum_r, sq_r);
    result.covariance_squared = covrt_criterion(nl, nr, sum_l, sum_r);
    const double n = static_cast<double>(nl + nr);
    const double plpr =
        (static_cast<double>(nl) / n) * (static_cast<double>(nr) / n);
    result.residual = result.impurity_gain - result.covariance_squared / plpr;
    return result;
}

}  // namespace covrt
