#pragma once

#include <cstdint>

#include "covrt/dataset.hpp"
#include "covrt/splitting.hpp"
#include "covrt/tree.hpp"

namespace covrt {

// Safety cap standing in for "grow to the maximum depth"; never reached in
// practice because the node-size or zero-gain stop fires first.
inline constexpr int kFullDepthCap = 64;

struct GrowConfig {
    CriterionKind criterion = CriterionKind::covrt;
    int max_depth = 0;       // K; root-only tree when 0
    int min_node_size = 5;   // nodes with n <= min_node_size are not split
    std::uint64_t seed = 0;  // consumed only by the random criterion
};

// Depth-limited greedy recursive partitioning, breadth-first by level: each
// terminal node t at level k is split iff N_t > min_node_size and best_split
// returns a candidate. Children inherit rows by the left-closed rule.
Tree grow(const Dataset& data, const GrowConfig& config);

// grow with the depth cap; splitting continues until the node-size or
// zero-gain stop ends every branch.
Tree grow_full(const Dataset& data, CriterionKind criterion,
               int min_node_size = 5, std::uint64_t seed = 0);

}  // namespace covrt
