#pragma once

#include <string>
#include <utility>
#include <vector>

#include "covrt/dataset.hpp"

namespace covrt {

enum class CriterionKind { cart, covrt, random };

std::string to_string(CriterionKind k);
CriterionKind criterion_from_string(const std::string& s);

struct Node {
    bool is_leaf = true;
    int feature = -1;      // internal nodes only
    double threshold = 0;  // internal nodes only
    int left = -1;
    int right = -1;
    int n = 0;
    double mean = 0;  // training-response mean of the node
    double risk = 0;  // within-node empirical L2 risk of the mean
    int depth = 0;
};

// Piecewise-constant regression tree. Nodes live in an id-indexed store with
// the root at id 0; trees are immutable after growth. Routing is left-closed:
// a point goes left iff x[feature] <= threshold.
struct Tree {
    std::vector<Node> nodes;
    CriterionKind criterion = CriterionKind::cart;
    int max_depth = 0;
    int min_node_size = 5;
    std::vector<std::string> column_names;

    const Node& root() const { return nodes.front(); }
    int n_features() const { return static_cast<int>(column_names.size()); }
    int leaf_count() const;
    int internal_count() const;
    std::vector<int> leaf_ids() const;
};

// Mean of the unique leaf reached by descending with the left-closed rule.
// Throws std::invalid_argument on dimension mismatch or non-finite input.
double predict(const Tree& tree, const Eigen::Ref<const Eigen::VectorXd>& point);

// Leaf id reached by row `row` of `data` (no copy of the row).
int leaf_for_row(const Tree& tree, const Dataset& data, int row);

Eigen::VectorXd predict_dataset(const Tree& tree, const Dataset& data);

// (mean, (1/N_t) * sum (y_i - mean)^2) over the region's rows, accumulated
// in row-index order. Throws on an empty region.
std::pair<double, double> node_mean_and_risk(const Dataset& data,
                                             const NodeRegion& region);

// Rows routed through each node (internal nodes included), by node id.
std::vector<std::vector<int>> assign_regions(const Tree& tree, const Dataset& data);

// Sum over leaves of (n_leaf / N) * risk_leaf, from stored node stats.
double leaf_weighted_risk(const Tree& tree);

// Structural invariants (rooted binary tree, child counts partition parents,
// depth bound). Throws std::logic_error with a description.
void validate_tree(const Tree& tree);

// Collapse every node at depth > k; node stats are preserved. Produces the
// same tree as growing with max_depth = k (growth is breadth-first).
Tree truncate_to_depth(const Tree& tree, int k);

}  // namespace covrt
