#include "covrt/tree.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

namespace covrt {

std::string to_string(CriterionKind k) {
    switch (k) {
        case CriterionKind::cart: return "cart";
        case CriterionKind::covrt: return "covrt";
        case CriterionKind::random: return "random";
    }
    throw std::logic_error("unknown criterion kind");
}

CriterionKind criterion_from_string(const std::string& s) {
    if (s == "cart") return CriterionKind::cart;
    if (s == "covrt") return CriterionKind::covrt;
    if (s == "random") return CriterionKind::random;
    throw std::invalid_argument("unknown criterion: " + s);
}

int Tree::leaf_count() const {
    int c = 0;
    for (const Node& node : nodes) c += node.is_leaf ? 1 : 0;
    return c;
}

int Tree::internal_count() const {
    return static_cast<int>(nodes.size()) - leaf_count();
}

std::vector<int> Tree::leaf_ids() const {
    std::vector<int> ids;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].is_leaf) ids.push_back(static_cast<int>(i));
    return ids;
}

double predict(const Tree& tree, const Eigen::Ref<const Eigen::VectorXd>& point) {
    if (tree.nodes.empty()) throw std::invalid_argument("predict: empty tree");
    if (point.size() != tree.n_features())
        throw std::invalid_argument("predict: point dimension does not match tree");
    if (!point.allFinite())
        throw std::invalid_argument("predict: non-finite input");
    int id = 0;
    while (!tree.nodes[static_cast<std::size_t>(id)].is_leaf) {
        const Node& node = tree.nodes[static_cast<std::size_t>(id)];
        id = point[node.feature] <= node.threshold ? node.left : node.right;
    }
    return tree.nodes[static_cast<std::size_t>(id)].mean;
}

int leaf_for_row(const Tree& tree, const Dataset& data, int row) {
    int id = 0;
    while (!tree.nodes[static_cast<std::size_t>(id)].is_leaf) {
        const Node& node = tree.nodes[static_cast<std::size_t>(id)];
        id = data.features(row, node.feature) <= node.threshold ? node.left : node.right;
    }
    return id;
}

Eigen::VectorXd predict_dataset(const Tree& tree, const Dataset& data) {
    if (data.n_cols() != tree.n_features())
        throw std::invalid_argument("predict: dataset dimension does not match tree");
    Eigen::VectorXd out(data.n_rows());
    for (Eigen::Index i = 0; i < data.n_rows(); ++i)
        out[i] = tree.nodes[static_cast<std::size_t>(
                                leaf_for_row(tree, data, static_cast<int>(i)))]
                     .mean;
    return out;
}

std::pair<double, double> node_mean_and_risk(const Dataset& data,
                                             const NodeRegion& region) {
    if (region.row_indices.empty())
        throw std::invalid_argument("node_mean_and_risk: empty region");
    double sum = 0;
    for (int i : region.row_indices) sum += data.response[i];
    const double mean = sum / static_cast<double>(region.row_indices.size());
    double sq = 0;
    for (int i : region.row_indices) {
        const double d = data.response[i] - mean;
        sq += d * d;
    }
    return {mean, sq / static_cast<double>(region.row_indices.size())};
}

std::vector<std::vector<int>> assign_regions(const Tree& tree, const Dataset& data) {
    if (data.n_cols() != tree.n_features())
        throw std::invalid_argument("assign_regions: dataset dimension mismatch");
    std::vector<std::vector<int>> regions(tree.nodes.size());
    for (Eigen::Index i = 0; i < data.n_rows(); ++i) {
        int id = 0;
        regions[0].push_back(static_cast<int>(i));
        while (!tree.nodes[static_cast<std::size_t>(id)].is_leaf) {
            const Node& node = tree.nodes[static_cast<std::size_t>(id)];
            id = data.features(i, node.feature) <= node.threshold ? node.left
                                                                  : node.right;
            regions[static_cast<std::size_t>(id)].push_back(static_cast<int>(i));
        }
    }
    return regions;
}

double leaf_weighted_risk(const Tree& tree) {
    const double n = static_cast<double>(tree.root().n);
    double total = 0;
    for (const Node& node : tree.nodes)
        if (node.is_leaf) total += (static_cast<double>(node.n) / n) * node.risk;
    return total;
}

void validate_tree(const Tree& tree) {
    if (tree.nodes.empty()) throw std::logic_error("tree: no nodes");
    const int n_nodes = static_cast<int>(tree.nodes.size());
    std::vector<int> parent(tree.nodes.size(), -1);
    for (int id = 0; id < n_nodes; ++id) {
        const Node& node = tree.nodes[static_cast<std::size_t>(id)];
        if (node.n < 1) throw std::logic_error("tree: node with n < 1");
        if (node.risk < 0) throw std::logic_error("tree: negative node risk");
        if (node.is_leaf) {
            if (node.depth > tree.max_depth)
                throw std::logic_error("tree: leaf deeper than max_depth");
            continue;
        }
        if (node.feature < 0 || node.feature >= tree.n_features())
            throw std::logic_error("tree: split feature out of range");
        if (node.left < 0 || node.left >= n_nodes || node.right < 0 ||
            node.right >= n_nodes || node.left == node.right)
            throw std::logic_error("tree: bad child ids");
        for (int child : {node.left, node.right}) {
            if (child == 0) throw std::logic_error("tree: root has a parent");
            if (parent[static_cast<std::size_t>(child)] != -1)
                throw std::logic_error("tree: node with two parents");
            parent[static_cast<std::size_t>(child)] = id;
            if (tree.nodes[static_cast<std::size_t>(child)].depth != node.depth + 1)
                throw std::logic_error("tree: child depth mismatch");
        }
        const Node& l = tree.nodes[static_cast<std::size_t>(node.left)];
        const Node& r = tree.nodes[static_cast<std::size_t>(node.right)];
        if (l.n < 1 || r.n < 1 || l.n + r.n != node.n)
            throw std::logic_error("tree: children do not partition parent samples");
        if (node.n <= tree.min_node_size)
            throw std::logic_error("tree: split below the minimum node size");
    }
    // every non-root reachable exactly once
    for (int id = 1; id < n_nodes; ++id)
        if (parent[static_cast<std::size_t>(id)] == -1)
            throw std::logic_error("tree: orphan node");
}

Tree truncate_to_depth(const Tree& tree, int k) {
    if (k < 0) throw std::invalid_argument("truncate_to_depth: negative depth");
    Tree out;
    out.criterion = tree.criterion;
    out.max_depth = k;
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
        if (!node.is_leaf && node.depth < k) {
            queue.push_back(node.left);
            queue.push_back(node.right);
        }
    }
    out.nodes.reserve(order.size());
    for (int id : order) {
        Node node = tree.nodes[static_cast<std::size_t>(id)];
        if (!node.is_leaf && node.depth < k) {
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

}  // namespace covrt
