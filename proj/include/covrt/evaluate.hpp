#pragma once

#include "covrt/dataset.hpp"
#include "covrt/tree.hpp"

namespace covrt {

struct EvalResult {
    double l2_risk = 0;
    double r_squared = 0;
    long n = 0;
};

// Mean squared residual of the tree's predictions on `data`.
double empirical_l2_risk(const Tree& tree, const Dataset& data);

// 1 - l2_risk / Var(response of data), population-style (divide by n)
// variance. May be negative. Throws when the response is constant.
double r_squared(const Tree& tree, const Dataset& data);

// Test risk minus training risk.
double generalization_gap(const Tree& tree, const Dataset& train,
                          const Dataset& test);

EvalResult evaluate(const Tree& tree, const Dataset& data);

}  // namespace covrt
