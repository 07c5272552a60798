#pragma once

#include <vector>

#include "covrt/dataset.hpp"
#include "covrt/tree.hpp"

namespace covrt {

// One weakest-link collapse. Simultaneous minimizers of the link value are
// collapsed together in a single step under one critical alpha.
struct PruneStep {
    double critical_alpha = 0;
    std::vector<int> collapsed;  // node ids turned into leaves, topmost only
    int leaves_after = 0;
    double train_risk_after = 0;  // sum over leaves of (n/N) * risk
};

// Nested subtree sequence from the full tree down to the root-only tree.
// critical_alpha is non-decreasing, leaves_after strictly decreasing to 1.
struct PruneSequence {
    std::vector<PruneStep> steps;
};

// Weakest-link cost-complexity sequence. Repeatedly collapses the internal
// node minimizing g(t) = ((N_t/N)*risk_t - branch_risk(t)) / (|leaves(t)|-1),
// all risks as global fractions so that their sum over leaves equals the
// tree's training risk. Empty for a root-only tree. Requires the tree to
// have been grown on `data` (root count must match).
PruneSequence prune_sequence(const Tree& tree, const Dataset& data);

// Subtree after applying the first `steps` steps of the sequence, re-indexed
// breadth-first.
Tree subtree_after_steps(const Tree& tree, const PruneSequence& seq, std::size_t steps);

// Largest subtree in the sequence with leaf count <= leaves.
// Throws std::invalid_argument when leaves < 1.
Tree prune_to_leaves(const Tree& tree, const Dataset& data, int leaves);

struct AlphaSelection {
    double alpha = 0;  // geometric mean of the chosen subtree's alpha interval
    Tree pruned;
    double validation_risk = 0;
};

// Evaluates the validation L2 risk of every subtree in the sequence
// (unpruned tree included) and returns the minimizer; ties go to fewer
// leaves. The reported alpha is the geometric mean of the subtree's
// bracketing critical alphas, with 10 * alpha_max closing the last interval.
AlphaSelection select_alpha(const Tree& tree, const Dataset& train,
                            const Dataset& validation);

}  // namespace covrt
