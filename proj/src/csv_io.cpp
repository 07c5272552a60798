#include "covrt/csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace covrt {

std::string format_double(double v) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), v);
    return std::string(buffer, result.ptr);
}

namespace {

std::string trim(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && (s[begin] == ' ' || s[begin] == '\t')) ++begin;
    while (end > begin &&
           (s[end - 1] == ' ' || s[end - 1] == '\t' || s[end - 1] == '\r'))
        --end;
    return s.substr(begin, end - begin);
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

bool parse_double(const std::string& cell, double& out) {
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    const auto result = std::from_chars(begin, end, out);
    return result.ec == std::errc() && result.ptr == end;
}

}  // namespace

CsvTable read_csv_table(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw DataError("cannot open " + path);

    CsvTable table;
    std::string line;
    if (!std::getline(file, line)) throw DataError(path + ": empty file");
    table.header = split_line(line);
    if (table.header.empty()) throw DataError(path + ": empty header");

    long row_number = 1;
    while (std::getline(file, line)) {
        ++row_number;
        if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
        std::vector<std::string> row = split_line(line);
        if (row.size() != table.header.size())
            throw DataError(path + ": row " + std::to_string(row_number) + " has " +
                            std::to_string(row.size()) + " cells, expected " +
                            std::to_string(table.header.size()));
        for (std::size_t j = 0; j < row.size(); ++j)
            if (row[j].empty())
                throw DataError(path + ": row " + std::to_string(row_number) +
                                " column '" + table.header[j] + "' is empty");
        table.cells.push_back(std::move(row));
    }
    if (table.cells.empty()) throw DataError(path + ": no data rows");
    return table;
}

Eigen::MatrixXd extract_features(const CsvTable& table,
                                 const std::vector<std::string>& column_names) {
    const std::size_t n = table.cells.size();
    Eigen::MatrixXd x(n, column_names.size());
    for (std::size_t k = 0; k < column_names.size(); ++k) {
        const std::string& name = column_names[k];
        long column = -1;
        std::string level;
        for (std::size_t j = 0; j < table.header.size(); ++j)
            if (table.header[j] == name) column = static_cast<long>(j);
        if (column < 0) {
            const std::size_t eq = name.find('=');
            if (eq != std::string::npos) {
                const std::string prefix = name.substr(0, eq);
                for (std::size_t j = 0; j < table.header.size(); ++j)
                    if (table.header[j] == prefix) {
                        column = static_cast<long>(j);
                        level = name.substr(eq + 1);
                    }
            }
        }
        if (column < 0) throw DataError("missing column '" + name + "'");
        for (std::size_t i = 0; i < n; ++i) {
            const std::string& cell = table.cells[i][static_cast<std::size_t>(column)];
            if (level.empty()) {
                double v;
                if (!parse_double(cell, v))
                    throw DataError("row " + std::to_string(i + 2) + " column '" +
                                    name + "': cannot parse '" + cell + "'");
                x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = v;
            } else {
                x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                    cell == level ? 1.0 : 0.0;
            }
        }
    }
    return x;
}

Dataset load_csv(const std::string& path, const std::string& target_column,
                 CategoricalPolicy policy) {
    const CsvTable table = read_csv_table(path);
    const std::vector<std::string>& header = table.header;
    const std::vector<std::vector<std::string>>& cells = table.cells;

    long target_index = -1;
    for (std::size_t j = 0; j < header.size(); ++j)
        if (header[j] == target_column) target_index = static_cast<long>(j);
    if (target_index < 0)
        throw DataError(path + ": target column '" + target_column + "' not found");

    const std::size_t n = cells.size();
    const std::size_t width = header.size();
    std::vector<char> numeric(width, 1);
    for (std::size_t j = 0; j < width; ++j) {
        for (std::size_t i = 0; i < n && numeric[j]; ++i) {
            double v;
            if (!parse_double(cells[i][j], v)) numeric[j] = 0;
        }
    }
    if (!numeric[static_cast<std::size_t>(target_index)])
        throw DataError(path + ": target column '" + target_column +
                        "' contains non-numeric cells");

    // expanded feature columns: numeric pass through, categoricals one-hot
    std::vector<std::string> names;
    std::vector<std::pair<std::size_t, std::string>> sources;  // (col, level or "")
    for (std::size_t j = 0; j < width; ++j) {
        if (static_cast<long>(j) == target_index) continue;
        if (numeric[j]) {
            names.push_back(header[j]);
            sources.emplace_back(j, std::string());
            continue;
        }
        if (policy == CategoricalPolicy::reject)
            throw DataError(path + ": column '" + header[j] + "' is not numeric");
        std::set<std::string> levels;
        for (std::size_t i = 0; i < n; ++i) levels.insert(cells[i][j]);
        for (const std::string& level : levels) {
            names.push_back(header[j] + "=" + level);
            sources.emplace_back(j, level);
        }
    }
    if (names.empty()) throw DataError(path + ": no feature columns");

    Eigen::MatrixXd x(n, names.size());
    Eigen::VectorXd y(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < sources.size(); ++k) {
            const auto& [j, level] = sources[k];
            if (level.empty()) {
                double v;
                parse_double(cells[i][j], v);
                x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = v;
            } else {
                x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                    cells[i][j] == level ? 1.0 : 0.0;
            }
        }
        double v;
        parse_double(cells[i][static_cast<std::size_t>(target_index)], v);
        y[static_cast<Eigen::Index>(i)] = v;
    }

    try {
        return make_dataset(std::move(x), std::move(y), std::move(names),
                            target_column);
    } catch (const std::invalid_argument& e) {
        throw DataError(path + ": " + e.what());
    }
}

void write_dataset_csv(const Dataset& data, const std::string& path) {
    std::ofstream file(path);
    if (!file) throw DataError("cannot write " + path);
    for (const std::string& name : data.column_names) file << name << ',';
    file << data.response_name << '\n';
    for (Eigen::Index i = 0; i < data.n_rows(); ++i) {
        for (Eigen::Index j = 0; j < data.n_cols(); ++j)
            file << format_double(data.features(i, j)) << ',';
        file << format_double(data.response[i]) << '\n';
    }
}

}  // namespace covrt
