#pragma once

#include <string>

#include "covrt/dataset.hpp"

namespace covrt {

enum class CategoricalPolicy { one_hot, reject };

// Loads a comma-separated file (header row, '.' decimal point, UTF-8).
// Numeric columns parse as binary64; columns containing any non-numeric cell
// become categorical and are one-hot expanded into {0,1} columns named
// "col=value" (levels sorted), or rejected under CategoricalPolicy::reject.
// Blank cells and ragged rows raise DataError naming the row; the target
// column must exist and be numeric.
Dataset load_csv(const std::string& path, const std::string& target_column,
                 CategoricalPolicy policy = CategoricalPolicy::one_hot);

// Header `<column_names...>,<response_name>`, one row per observation,
// values as shortest round-trip decimals.
void write_dataset_csv(const Dataset& data, const std::string& path);

// Shortest decimal that round-trips to the same binary64.
std::string format_double(double v);

// Raw rectangular table (header + string cells); blank cells and ragged rows
// raise DataError naming the row.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> cells;
};

CsvTable read_csv_table(const std::string& path);

// Feature matrix for the given trained column names. A name present in the
// header parses numerically; a name of the form "col=level" whose prefix is
// in the header becomes the one-hot indicator of that level. Anything else
// raises DataError.
Eigen::MatrixXd extract_features(const CsvTable& table,
                                 const std::vector<std::string>& column_names);

}  // namespace covrt
