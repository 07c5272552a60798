#include <doctest.h>

#include "covrt/evaluate.hpp"
#include "covrt/grow.hpp"
#include "covrt/simgen.hpp"
#include "covrt/theory.hpp"
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

}  // namespace

TEST_CASE("empirical_l2_risk basics") {
    const Dataset data = tiny_steps();
    GrowConfig config;
    config.criterion = CriterionKind::cart;
    config.max_depth = 1;
    config.min_node_size = 1;
    const Tree stump = grow(data, config);
    CHECK(empirical_l2_risk(stump, data) == 0.0);  // perfect split

    config.max_depth = 0;
    const Tree root = grow(data, config);
    // mean predictor: risk equals the response variance
    CHECK(empirical_l2_risk(root, data) == 0.25);
}

TEST_CASE("r_squared basics") {
    const Dataset data = tiny_steps();
    GrowConfig config;
    config.criterion = CriterionKind::cart;
    config.max_depth = 1;
    config.min_node_size = 1;
    const Tree stump = grow(data, config);
    CHECK(r_squared(stump, data) == 1.0);

    config.max_depth = 0;
    const Tree root = grow(data, config);
    CHECK(r_squared(root, data) == 0.0);

    Eigen::MatrixXd x(3, 1);
    x << 1, 2, 3;
    Eigen::VectorXd y = Eigen::VectorXd::Constant(3, 1.0);
    const Dataset constant = make_dataset(x, y);
    CHECK_THROWS_AS(r_squared(stump, constant), std::invalid_argument);
}

TEST_CASE("r_squared identity holds on random inputs") {
    Rng rng(19);
    for (int round = 0; round < 20; ++round) {
        const Dataset data = make_fuzz_dataset(rng, 60, 3);
        const Tree tree = grow_full(data, CriterionKind::covrt, 4);
        const double mean = data.response.mean();
        const double var = (data.response.array() - mean).square().sum() /
                           static_cast<double>(data.n_rows());
        if (var == 0) continue;
        const double lhs = r_squared(tree, data);
        const double rhs = 1.0 - empirical_l2_risk(tree, data) / var;
        CHECK(oracles::rel_diff(lhs, rhs) < 1e-12);
        CHECK(lhs <= 1.0);
    }
}

TEST_CASE("generalization gap") {
    const Dataset data = tiny_steps();
    GrowConfig config;
    config.criterion = CriterionKind::cart;
    config.max_depth = 1;
    config.min_node_size = 1;
    const Tree stump = grow(data, config);
    CHECK(generalization_gap(stump, data, data) == 0.0);

    // deep trees on noisy data overfit: positive gap in the typical draw
    int positive = 0;
    const int reps = 30;
    for (int rep = 0; rep < reps; ++rep) {
        DgpSpec spec;
        spec.name = "simple_linear";
        spec.parameters["c0"] = 0.0;
        spec.parameters["c1"] = 0.5;
        spec.n = 150;
        spec.seed = derive_seed(555, static_cast<std::uint64_t>(rep));
        const auto [train, g1] = generate(spec);
        spec.seed = derive_seed(556, static_cast<std::uint64_t>(rep));
        const auto [test, g2] = generate(spec);
        const Tree deep = grow_full(train, CriterionKind::cart);
        if (generalization_gap(deep, train, test) > 0) ++positive;
    }
    CHECK(positive > reps * 8 / 10);
}

TEST_CASE("evaluate bundles risk, r2 and n") {
    const Dataset data = tiny_steps();
    GrowConfig config;
    config.max_depth = 1;
    config.min_node_size = 1;
    const Tree tree = grow(data, config);
    const EvalResult result = evaluate(tree, data);
    CHECK(result.l2_risk == 0.0);
    CHECK(result.r_squared == 1.0);
    CHECK(result.n == 4);
}
