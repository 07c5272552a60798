#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace covrt {

// Raised for malformed external inputs (files, shapes, lookups). The CLI
// maps it to exit code 2.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numeric feature matrix (N x p) plus response vector; the universal input
// to growth, evaluation and experiments. No missing values allowed.
struct Dataset {
    Eigen::MatrixXd features;
    Eigen::VectorXd response;
    std::vector<std::string> column_names;
    std::string response_name = "y";

    Eigen::Index n_rows() const { return features.rows(); }
    Eigen::Index n_cols() const { return features.cols(); }
};

// N >= 1, p >= 1, matching row counts, names matching p, all values finite.
// Throws std::invalid_argument on violation.
void validate(const Dataset& data);

// Builds and validates; default column names are x1..xp.
Dataset make_dataset(Eigen::MatrixXd features, Eigen::VectorXd response,
                     std::vector<std::string> column_names = {},
                     std::string response_name = "y");

// Row subset of a Dataset owned by one tree node.
struct NodeRegion {
    std::vector<int> row_indices;
    int depth = 0;
};

// Non-empty, in-range, unique indices, depth >= 0.
void validate(const NodeRegion& region, Eigen::Index n_rows);

NodeRegion full_region(const Dataset& data);

}  // namespace covrt
