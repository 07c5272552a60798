#pragma once

#include <optional>

#include "covrt/dataset.hpp"
#include "covrt/rng.hpp"
#include "covrt/tree.hpp"

namespace covrt {

struct SplitCandidate {
    int feature = -1;
    double threshold = 0;  // midpoint of two consecutive distinct values
    int n_left = 0;
    int n_right = 0;
    double sum_left = 0;
    double sum_right = 0;
    double criterion_value = 0;
};

struct SplitDecision {
    std::optional<SplitCandidate> best;  // absent if no candidate or max is 0
    CriterionKind criterion = CriterionKind::cart;
    long candidates_evaluated = 0;
};

// Covariance-squared criterion: (nl*nr/n^2)^2 * (mean_l - mean_r)^2.
// Symmetric under swapping sides (bit-exact). Throws if a side is empty.
double covrt_criterion(int n_left, int n_right, double sum_left, double sum_right);

// Impurity gain: parent_risk - (nl/n)*risk_l - (nr/n)*risk_r with child risks
// derived from per-side (sum, sum of squares); clamped at 0 against rounding.
double cart_impurity_gain(double parent_risk, int n_left, int n_right,
                          double sum_left, double sum_sq_left,
                          double sum_right, double sum_sq_right);

// Exhaustive scan over (feature, midpoint) candidates using per-feature
// sorted order and running prefix sums; O(N log N + N) per feature. Ties are
// broken toward the smallest feature index, then the smallest threshold,
// comparing criterion values with exact floating-point equality. A node whose
// responses are all equal yields an absent best (every criterion value is 0).
// For CriterionKind::random the feature is drawn uniformly from columns with
// >= 2 distinct values and the threshold uniformly from that feature's
// midpoints; rng is consumed only in that mode. Throws if the region has
// fewer than 2 rows.
SplitDecision best_split(const Dataset& data, const NodeRegion& region,
                         CriterionKind criterion, Rng& rng);

// Largest criterion value over all candidates, 0 when no candidate exists
// (single row or no distinct feature values). CART and COVRT only.
double max_criterion_value(const Dataset& data, const NodeRegion& region,
                           CriterionKind criterion);

struct IgCsIdentity {
    double impurity_gain = 0;
    double covariance_squared = 0;
    double residual = 0;     // impurity_gain - covariance_squared/(pl*pr)
    double parent_risk = 0;  // natural scale for relative comparisons
};

// Evaluates both routes of the gain identity at split (feature, threshold).
// Throws if a daughter is empty.
IgCsIdentity ig_cs_identity_check(const Dataset& data, const NodeRegion& region,
                                  int feature, double threshold);

}  // namespace covrt
