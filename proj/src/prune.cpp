#include "covrt/prune.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

#include "covrt/evaluate.hpp"

namespace covrt {

namespace {

struct BranchStats {
    int leaves = 0;
    double risk = 0;  // sum over branch leaves of (n/N) * risk
};

// Post-order branch stats over the view where `collapsed` nodes are leaves.
void branch_stats(const Tree& tree, const std::vector<char>& collapsed, int id,
                  double n_total, std::vector<BranchStats>& stats) {
    const Node& node = tree.nodes[static_cast<std::size_t>(id)];
    if (node.is_leaf || collapsed[static_cast<std::size_t>(id)]) {
        stats[static_cast<std::size_t>(id)] = {
            1, (static_cast<double>(node.n) / n_total) * node.risk};
        return;
    }
    branch_stats(tree, collapsed, node.left, n_total, stats);
    branch_stats(tree, collapsed, node.right, n_total, stats);
    const auto& l = stats[static_cast<std::size_t>(node.left)];
    const auto& r = stats[static_cast<std::size_t>(node.right)];
    stats[static_cast<std::size_t>(id)] = {l.leaves + r.leaves, l.risk + r.risk};
}

// Collapse every topmost active node whose link value equals alpha.
void collapse_minimizers(const Tree& tree, std::vector<char>& collapsed, int id,
                         const std::vector<double>& link, double alpha,
                         std::vector<int>& out) {
    const Node& node = tree.nodes[static_cast<std::size_t>(id)];
    if (node.is_leaf || collapsed[static_cast<std::size_t>(id)]) return;
    if (link[static_cast<std::size_t>(id)] == alpha) {
        collapsed[static_cast<std::size_t>(id)] = 1;
        out.push_back(id);
        return;  // descendants vanish with the branch
    }
    collapse_minimizers(tree, collapsed, node.left, link, alpha, out);
    collapse_minimizers(tree, collapsed, node.right, link, alpha, out);
}

Tree build_subtree(const Tree& tree, const std::vector<char>& collapsed) {
    Tree out;
    out.criterion = tree.criterion;
    out.max_depth = tree.max_depth;
    out.min_node_size = tree.min_node_size;
    out.column_names = tree.column_names;

    std::deque<int> queue = {0};
    std::vector<int> remap(tree.nodes.size(), -1);
    std::vector<int> order;
    while (!queue.empty()) {
        const int id = queue.front();
        queue.pop_front();
        remap[static_cast<std::size_t>(id)] = static_cast<int>(order.size());
        order.push_back(id);
        const Node& node = tree.nodes[static_cast<std::size_t>(id)];
        if (!node.is_leaf && !collapsed[static_cast<std::size_t>(id)]) {
            queue.push_back(node.left);
            queue.push_back(node.right);
        }
    }
    out.nodes.reserve(order.size());
    for (int id : order) {
        Node node = tree.nodes[static_cast<std::size_t>(id)];
        if (!node.is_leaf && !collapsed[static_cast<std::size_t>(id)]) {
            node.left = remap[static_cast<std::size_t>(node.left)];
            node.right = remap[static_cast<std::size_t>(node.right)];
        } else {
            node.is_leaf = true;
            node.feature = -1;
            node.threshold = 0;
            node.left = -1;
            node.right = -1;
        }
        out.nodes.push_back(node);
    }
    return out;
}

}  // namespace

PruneSequence prune_sequence(const Tree& tree, const Dataset& data) {
    if (tree.nodes.empty()) throw std::invalid_argument("prune: empty tree");
    if (tree.root().n != data.n_rows())
        throw std::invalid_argument("prune: tree was not grown on this dataset");

    PruneSequence seq;
    const double n_total = static_cast<double>(tree.root().n);
    std::vector<char> collapsed(tree.nodes.size(), 0);
    std::vector<BranchStats> stats(tree.nodes.size());
    std::vector<double> link(tree.nodes.size(),
                             std::numeric_limits<double>::infinity());

    while (!(tree.root().is_leaf || collapsed[0])) {
        branch_stats(tree, collapsed, 0, n_total, stats);
        double alpha = std::numeric_limits<double>::infinity();
        for (std::size_t id = 0; id < tree.nodes.size(); ++id) {
            link[id] = std::numeric_limits<double>::infinity();
        }
        // link values of active internal nodes (nodes under a collapse are
        // unreachable and keep +inf)
        std::deque<int> queue = {0};
        while (!queue.empty()) {
            const int id = queue.front();
            queue.pop_front();
            const Node& node = tree.nodes[static_cast<std::size_t>(id)];
            if (node.is_leaf || collapsed[static_cast<std::size_t>(id)]) continue;
            const auto& branch = stats[static_cast<std::size_t>(id)];
            const double leaf_risk =
                (static_cast<double>(node.n) / n_total) * node.risk;
            const double g = std::max(
                0.0, (leaf_risk - branch.risk) /
                         static_cast<double>(branch.leaves - 1));
            link[static_cast<std::size_t>(id)] = g;
            alpha = std::min(alpha, g);
            queue.push_back(node.left);
            queue.push_back(node.right);
        }

        PruneStep step;
        step.critical_alpha = alpha;
        collapse_minimizers(tree, collapsed, 0, link, alpha, step.collapsed);

        branch_stats(tree, collapsed, 0, n_total, stats);
        step.leaves_after = stats[0].leaves;
        step.train_risk_after = stats[0].risk;
        seq.steps.push_back(std::move(step));
    }
    return seq;
}

Tree subtree_after_steps(const Tree& tree, const PruneSequence& seq,
                         std::size_t steps) {
    if (steps > seq.steps.size())
        throw std::invalid_argument("subtree_after_steps: step index out of range");
    std::vector<char> collapsed(tree.nodes.size(), 0);
    for (std::size_t k = 0; k < steps; ++k)
        for (int id : seq.steps[k].collapsed)
            collapsed[static_cast<std::size_t>(id)] = 1;
    return build_subtree(tree, collapsed);
}

Tree prune_to_leaves(const Tree& tree, const Dataset& data, int leaves) {
    if (leaves < 1)
        throw std::invalid_argument("prune_to_leaves: target must be >= 1");
    if (tree.leaf_count() <= leaves) return tree;
    const PruneSequence seq = prune_sequence(tree, data);
    for (std::size_t k = 0; k < seq.steps.size(); ++k)
        if (seq.steps[k].leaves_after <= leaves)
            return subtree_after_steps(tree, seq, k + 1);
    return subtree_after_steps(tree, seq, seq.steps.size());
}

AlphaSelection select_alpha(const Tree& tree, const Dataset& train,
                            const Dataset& validation) {
    validate(validation);
    const PruneSequence seq = prune_sequence(tree, train);

    AlphaSelection selection;
    double best_risk = std::numeric_limits<double>::infinity();
    std::size_t best_k = 0;
    for (std::size_t k = 0; k <= seq.steps.size(); ++k) {
        const Tree subtree = subtree_after_steps(tree, seq, k);
        const double risk = empirical_l2_risk(subtree, validation);
        // <= so that exact ties resolve toward fewer leaves
        if (risk <= best_risk) {
            best_risk = risk;
            best_k = k;
        }
    }
    selection.pruned = subtree_after_steps(tree, seq, best_k);
    selection.validation_risk = best_risk;
    if (!seq.steps.empty()) {
        const double lower =
            best_k == 0 ? 0.0 : seq.steps[best_k - 1].critical_alpha;
        const double upper = best_k == seq.steps.size()
                                 ? 10.0 * seq.steps.back().critical_alpha
                                 : seq.steps[best_k].critical_alpha;
        selection.alpha = std::sqrt(lower * upper);
    }
    return selection;
}

}  // namespace covrt
