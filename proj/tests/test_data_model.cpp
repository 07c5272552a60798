#include <doctest.h>

#include "covrt/grow.hpp"
#include "covrt/evaluate.hpp"
#include "covrt/model_io.hpp"
#include "covrt/theory.hpp"
#include "covrt/tree.hpp"
#include "oracles.hpp"

using namespace covrt;

namespace {

Dataset tiny_steps() {
    Eigen::MatrixXd x(4, 1);
    x << 1, 2, 3, 4;
    Eigen::VectorXd y(4);
    y << 0, 0, 1, 1;
    return make_dataset(x, y);
}

Tree stump(double threshold, double left_mean, double right_mean) {
    Tree tree;
    tree.criterion = CriterionKind::cart;
    tree.max_depth = 1;
    tree.min_node_size = 1;
    tree.column_names = {"x1", "x2"};
    Node root;
    root.is_leaf = false;
    root.feature = 0;
    root.threshold = threshold;
    root.left = 1;
    root.right = 2;
    root.n = 2;
    root.mean = (left_mean + right_mean) / 2;
    root.risk = 0.25;
    Node left;
    left.n = 1;
    left.mean = left_mean;
    left.depth = 1;
    Node right;
    right.n = 1;
    right.mean = right_mean;
    right.depth = 1;
    tree.nodes = {root, left, right};
    return tree;
}

}  // namespace

TEST_CASE("dataset validation") {
    Eigen::MatrixXd x(2, 2);
    x << 1, 2, 3, 4;
    Eigen::VectorXd y(2);
    y << 1, 2;
    CHECK_NOTHROW(make_dataset(x, y));
    Eigen::VectorXd bad = y;
    bad[0] = std::nan("");
    CHECK_THROWS_AS(make_dataset(x, bad), std::invalid_argument);
    Eigen::VectorXd short_y(1);
    short_y << 1;
    CHECK_THROWS_AS(make_dataset(x, short_y), std::invalid_argument);
    CHECK_THROWS_AS(make_dataset(Eigen::MatrixXd(0, 2), Eigen::VectorXd(0)),
                    std::invalid_argument);
}

TEST_CASE("node region validation") {
    const Dataset data = tiny_steps();
    CHECK_THROWS_AS(validate(NodeRegion{{}, 0}, data.n_rows()),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate(NodeRegion{{0, 0}, 0}, data.n_rows()),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate(NodeRegion{{4}, 0}, data.n_rows()),
                    std::invalid_argument);
    CHECK_NOTHROW(validate(NodeRegion{{0, 3}, 2}, data.n_rows()));
}

TEST_CASE("predict on a single-leaf tree returns the root mean") {
    Tree tree;
    tree.column_names = {"a"};
    Node root;
    root.n = 3;
    root.mean = 3.5;
    tree.nodes = {root};
    Eigen::VectorXd point(1);
    point << 42.0;
    CHECK(predict(tree, point) == 3.5);
}

TEST_CASE("boundary point routes left") {
    const Tree tree = stump(2.5, 0.0, 1.0);
    Eigen::VectorXd point(2);
    point << 2.5, 99.0;
    CHECK(predict(tree, point) == 0.0);
    point << 2.5000001, 0.0;
    CHECK(predict(tree, point) == 1.0);
}

TEST_CASE("predict input validation") {
    const Tree tree = stump(2.5, 0.0, 1.0);
    Eigen::VectorXd wrong(3);
    wrong << 1, 2, 3;
    CHECK_THROWS_AS(predict(tree, wrong), std::invalid_argument);
    Eigen::VectorXd inf(2);
    inf << std::numeric_limits<double>::infinity(), 0.0;
    CHECK_THROWS_AS(predict(tree, inf), std::invalid_argument);
}

TEST_CASE("fitted stump predicts the step value") {
    const Dataset data = tiny_steps();
    // independent search over the midpoints {1.5, 2.5, 3.5}
    const auto oracle =
        oracles::naive_best_split(data, {0, 1, 2, 3}, CriterionKind::cart);
    REQUIRE(oracle.has_value());
    CHECK(oracle->threshold == 2.5);

    for (CriterionKind criterion : {CriterionKind::cart, CriterionKind::covrt}) {
        GrowConfig config;
        config.criterion = criterion;
        config.max_depth = 1;
        config.min_node_size = 1;
        const Tree tree = grow(data, config);
        Eigen::VectorXd point(1);
        point << 3.0;
        CHECK(predict(tree, point) == 1.0);
    }
}

TEST_CASE("node_mean_and_risk") {
    Eigen::MatrixXd x(4, 1);
    x << 1, 2, 3, 4;

    SUBCASE("single point has zero risk") {
        Eigen::VectorXd y(4);
        y << 5, 0, 0, 0;
        const Dataset data = make_dataset(x, y);
        const auto [mean, risk] = node_mean_and_risk(data, NodeRegion{{0}, 0});
        CHECK(mean == 5.0);
        CHECK(risk == 0.0);
    }
    SUBCASE("two-point variance") {
        Eigen::VectorXd y(4);
        y << 0, 1, 0, 0;
        const Dataset data = make_dataset(x, y);
        const auto [mean, risk] = node_mean_and_risk(data, NodeRegion{{0, 1}, 0});
        CHECK(mean == 0.5);
        CHECK(risk == 0.25);
    }
    SUBCASE("direct formula on four points") {
        const Dataset data = tiny_steps();
        const auto [mean, risk] = node_mean_and_risk(data, full_region(data));
        CHECK(mean == 0.5);
        CHECK(risk == 0.25);
    }
    SUBCASE("empty region is an error") {
        const Dataset data = tiny_steps();
        CHECK_THROWS_AS(node_mean_and_risk(data, NodeRegion{{}, 0}),
                        std::invalid_argument);
    }
}

TEST_CASE("routing reaches exactly one leaf and regions partition rows") {
    Rng rng(7);
    for (int round = 0; round < 20; ++round) {
        const Dataset data = make_fuzz_dataset(rng, 60, 4);
        const Tree tree = grow_full(data, CriterionKind::cart, 2);
        const auto regions = assign_regions(tree, data);
        // each row lands in exactly one leaf
        std::vector<int> hits(static_cast<std::size_t>(data.n_rows()), 0);
        for (int id : tree.leaf_ids())
            for (int row : regions[static_cast<std::size_t>(id)])
                ++hits[static_cast<std::size_t>(row)];
        for (int h : hits) CHECK(h == 1);
    }
}

TEST_CASE("leaf risks decompose the global training risk") {
    Rng rng(11);
    for (int round = 0; round < 20; ++round) {
        const Dataset data = make_fuzz_dataset(rng, 80, 4);
        const Tree tree = grow_full(data, CriterionKind::covrt, 3);
        const double from_leaves = leaf_weighted_risk(tree);
        const double direct = empirical_l2_risk(tree, data);
        CHECK(oracles::rel_diff(from_leaves, direct) < 1e-10);
    }
}

TEST_CASE("rebuilding node means from routed rows reproduces stored means") {
    Rng rng(13);
    for (int round = 0; round < 10; ++round) {
        const Dataset data = make_fuzz_dataset(rng, 60, 3);
        const Tree tree = grow_full(data, CriterionKind::cart, 2);
        const auto regions = assign_regions(tree, data);
        for (std::size_t id = 0; id < tree.nodes.size(); ++id) {
            NodeRegion region{regions[id], tree.nodes[id].depth};
            const auto [mean, risk] = node_mean_and_risk(data, region);
            CHECK(oracles::rel_diff(mean, tree.nodes[id].mean) < 1e-12);
            CHECK(static_cast<int>(regions[id].size()) == tree.nodes[id].n);
        }
    }
}

TEST_CASE("tree structural invariants hold on grown trees") {
    Rng rng(17);
    for (int round = 0; round < 10; ++round) {
        const Dataset data = make_fuzz_dataset(rng, 60, 4);
        const Tree tree = grow_full(data, CriterionKind::covrt);
        CHECK_NOTHROW(validate_tree(tree));
    }
}
