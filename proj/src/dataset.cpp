#include "covrt/dataset.hpp"

#include <cmath>
#include <unordered_set>

namespace covrt {

void validate(const Dataset& data) {
    const auto n = data.features.rows();
    const auto p = data.features.cols();
    if (n < 1) throw std::invalid_argument("dataset: needs at least one row");
    if (p < 1) throw std::invalid_argument("dataset: needs at least one column");
    if (data.response.size() != n)
        throw std::invalid_argument("dataset: response length does not match row count");
    if (static_cast<Eigen::Index>(data.column_names.size()) != p)
        throw std::invalid_argument("dataset: column name count does not match feature count");
    if (!data.features.allFinite())
        throw std::invalid_argument("dataset: non-finite feature value");
    if (!data.response.allFinite())
        throw std::invalid_argument("dataset: non-finite response value");
}

Dataset make_dataset(Eigen::MatrixXd features, Eigen::VectorXd response,
                     std::vector<std::string> column_names,
                     std::string response_name) {
    Dataset data;
    data.features = std::move(features);
    data.response = std::move(response);
    if (column_names.empty()) {
        column_names.reserve(static_cast<std::size_t>(data.features.cols()));
        for (Eigen::Index j = 0; j < data.features.cols(); ++j)
            column_names.push_back("x" + std::to_string(j + 1));
    }
    data.column_names = std::move(column_names);
    data.response_name = std::move(response_name);
    validate(data);
    return data;
}

void validate(const NodeRegion& region, Eigen::Index n_rows) {
    if (region.row_indices.empty())
        throw std::invalid_argument("node region: empty row set");
    if (region.depth < 0)
        throw std::invalid_argument("node region: negative depth");
    std::unordered_set<int> seen;
    seen.reserve(region.row_indices.size());
    for (int i : region.row_indices) {
        if (i < 0 || i >= n_rows)
            throw std::invalid_argument("node region: row index out of range");
        if (!seen.insert(i).second)
            throw std::invalid_argument("node region: duplicate row index");
    }
}

NodeRegion full_region(const Dataset& data) {
    NodeRegion region;
    region.row_indices.resize(static_cast<std::size_t>(data.n_rows()));
    for (std::size_t i = 0; i < region.row_indices.size(); ++i)
        region.row_indices[i] = static_cast<int>(i);
    region.depth = 0;
    return region;
}

}  // namespace covrt
