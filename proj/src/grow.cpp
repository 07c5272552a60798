#include "covrt/grow.hpp"

#include <stdexcept>
#include <utility>

namespace covrt {

Tree grow(const Dataset& data, const GrowConfig& config) {
    validate(data);
    if (config.max_depth < 0)
        throw std::invalid_argument("grow: max_depth must be >= 0");
    if (config.min_node_size < 1)
        throw std::invalid_argument("grow: min_node_size must be >= 1");

    Tree tree;
    tree.criterion = config.criterion;
    tree.max_depth = config.max_depth;
    tree.min_node_size = config.min_node_size;
    tree.column_names = data.column_names;

    Rng rng(config.seed);

    NodeRegion root_region = full_region(data);
    const auto [root_mean, root_risk] = node_mean_and_risk(data, root_region);
    Node root;
    root.n = static_cast<int>(root_region.row_indices.size());
    root.mean = root_mean;
    root.risk = root_risk;
    root.depth = 0;
    tree.nodes.push_back(root);

    // frontier of (node id, rows) pairs, processed level by level in id order
    std::vector<std::pair<int, std::vector<int>>> frontier;
    frontier.emplace_back(0, std::move(root_region.row_indices));

    for (int level = 1; level <= config.max_depth && !frontier.empty(); ++level) {
        std::vector<std::pair<int, std::vector<int>>> next;
        for (auto& [id, rows] : frontier) {
            if (static_cast<int>(rows.size()) <= config.min_node_size) continue;
            NodeRegion region{rows, level - 1};
            const SplitDecision decision =
                best_split(data, region, config.criterion, rng);
            if (!decision.best) continue;
            const SplitCandidate& split = *decision.best;

            std::vector<int> left_rows;
            std::vector<int> right_rows;
            left_rows.reserve(static_cast<std::size_t>(split.n_left));
            right_rows.reserve(static_cast<std::size_t>(split.n_right));
            for (int i : rows) {
                if (data.features(i, split.feature) <= split.threshold)
                    left_rows.push_back(i);
                else
                    right_rows.push_back(i);
            }

            const int left_id = static_cast<int>(tree.nodes.size());
            const int right_id = left_id + 1;
            for (auto* child_rows : {&left_rows, &right_rows}) {
                NodeRegion child_region{*child_rows, level};
                const auto [mean, risk] = node_mean_and_risk(data, child_region);
                Node child;
                child.n = static_cast<int>(child_rows->size());
                child.mean = mean;
                child.risk = risk;
                child.depth = level;
                tree.nodes.push_back(child);
            }

            Node& parent = tree.nodes[static_cast<std::size_t>(id)];
            parent.is_leaf = false;
            parent.feature = split.feature;
            parent.threshold = split.threshold;
            parent.left = left_id;
            parent.right = right_id;

            next.emplace_back(left_id, std::move(left_rows));
            next.emplace_back(right_id, std::move(right_rows));
        }
        frontier = std::move(next);
    }
    return tree;
}

Tree grow_full(const Dataset& data, CriterionKind criterion, int min_node_size,
               std::uint64_t seed) {
    GrowConfig config;
    config.criterion = criterion;
    config.max_depth = kFullDepthCap;
    config.min_node_size = min_node_size;
    config.seed = seed;
    return grow(data, config);
}

}  // namespace covrt
