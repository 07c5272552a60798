#include "covrt/dataset_split.hpp"

#include <cmath>

#include "covrt/rng.hpp"

namespace covrt {

namespace {

Dataset take_rows(const Dataset& data, const std::vector<int>& order,
                  std::size_t begin, std::size_t end) {
    Dataset out;
    out.features.resize(static_cast<Eigen::Index>(end - begin), data.n_cols());
    out.response.resize(static_cast<Eigen::Index>(end - begin));
    for (std::size_t k = begin; k < end; ++k) {
        out.features.row(static_cast<Eigen::Index>(k - begin)) =
            data.features.row(order[k]);
        out.response[static_cast<Eigen::Index>(k - begin)] =
            data.response[order[k]];
    }
    out.column_names = data.column_names;
    out.response_name = data.response_name;
    return out;
}

}  // namespace

ThreeWaySplit split_dataset(const Dataset& data, const SplitRatios& ratios,
                            std::uint64_t seed) {
    validate(data);
    if (!(ratios.train > 0) || !(ratios.validation > 0) || !(ratios.test > 0))
        throw std::invalid_argument("split_dataset: ratios must be positive");
    const double total = ratios.train + ratios.validation + ratios.test;
    const std::size_t n = static_cast<std::size_t>(data.n_rows());
    const std::size_t n_train =
        static_cast<std::size_t>(std::floor(static_cast<double>(n) * ratios.train / total));
    const std::size_t n_validation = static_cast<std::size_t>(
        std::floor(static_cast<double>(n) * ratios.validation / total));
    if (n_train == 0 || n_validation == 0 || n_train + n_validation >= n)
        throw std::invalid_argument("split_dataset: a part would be empty");

    std::vector<int> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<int>(i);
    Rng rng(seed);
    shuffle(order, rng);

    ThreeWaySplit out;
    out.train = take_rows(data, order, 0, n_train);
    out.validation = take_rows(data, order, n_train, n_train + n_validation);
    out.test = take_rows(data, order, n_train + n_validation, n);
    return out;
}

}  // namespace covrt
