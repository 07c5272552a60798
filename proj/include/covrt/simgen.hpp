#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "covrt/additive.hpp"
#include "covrt/dataset.hpp"

namespace covrt {

// Seeded data-generating process. Known names: model1, model2, model3,
// model4, overfit5, simple_linear, cubic1d. Parameters:
//   overfit5:       beta (default 1)
//   simple_linear:  c0, c1 (required), extra_covariates (0 or 4, default 0)
// Coordinates are Uniform(0,1] (cubic1d: Uniform(-1,1]) drawn row-wise in
// column order, followed by the row's noise draw.
struct DgpSpec {
    std::string name;
    std::map<std::string, double> parameters;
    long n = 0;
    std::uint64_t seed = 0;
};

// Returns the sampled Dataset together with the noiseless regression
// function as an AdditiveFunction (for the theory checks). Throws DataError
// on unknown names, missing parameters, or n < 1.
std::pair<Dataset, AdditiveFunction> generate(const DgpSpec& spec);

}  // namespace covrt
