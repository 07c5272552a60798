#pragma once

#include <cstdint>

#include "covrt/dataset.hpp"

namespace covrt {

struct SplitRatios {
    double train = 2;
    double validation = 1;
    double test = 1;
};

struct ThreeWaySplit {
    Dataset train;
    Dataset validation;
    Dataset test;
};

// Seeded uniform shuffle (Fisher-Yates) followed by contiguous slicing.
// Sizes: floor for train and validation, remainder to test. Throws when any
// part would be empty or a ratio is not positive.
ThreeWaySplit split_dataset(const Dataset& data, const SplitRatios& ratios,
                            std::uint64_t seed);

}  // namespace covrt
