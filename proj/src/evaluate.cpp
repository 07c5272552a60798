#include "covrt/evaluate.hpp"

#include <stdexcept>

namespace covrt {

double empirical_l2_risk(const Tree& tree, const Dataset& data) {
    validate(data);
    const Eigen::VectorXd predictions = predict_dataset(tree, data);
    return (data.response - predictions).squaredNorm() /
           static_cast<double>(data.n_rows());
}

double r_squared(const Tree& tree, const Dataset& data) {
    validate(data);
    const double n = static_cast<double>(data.n_rows());
    const double mean = data.response.mean();
    const double variance =
        (data.response.array() - mean).square().sum() / n;
    if (variance == 0)
        throw std::invalid_argument("r_squared: constant response");
    return 1.0 - empirical_l2_risk(tree, data) / variance;
}

double generalization_gap(const Tree& tree, const Dataset& train,
                          const Dataset& test) {
    return empirical_l2_risk(tree, test) - empirical_l2_risk(tree, train);
}

EvalResult evaluate(const Tree& tree, const Dataset& data) {
    EvalResult result;
    result.l2_risk = empirical_l2_risk(tree, data);
    result.r_squared = r_squared(tree, data);
    result.n = static_cast<long>(data.n_rows());
    return result;
}

}  // namespace covrt
