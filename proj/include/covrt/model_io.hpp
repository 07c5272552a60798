#pragma once

#include <string>

#include "covrt/tree.hpp"

namespace covrt {

inline constexpr int kModelFormatVersion = 1;

// Versioned JSON model document with fields format_version, criterion,
// max_depth, min_node_size, column_names and nodes; each node carries
// {id, kind, feature, threshold, left, right, n, mean, risk} (split fields
// null on leaves). Numbers serialize as shortest round-trip decimals, so
// save/load/save is byte-stable.
std::string model_to_json(const Tree& tree);
Tree model_from_json(const std::string& text);

void save_model(const Tree& tree, const std::string& path);
Tree load_model(const std::string& path);

}  // namespace covrt
