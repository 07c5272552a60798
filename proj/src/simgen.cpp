#include "covrt/simgen.hpp"

#include <cmath>

#include "covrt/rng.hpp"

namespace covrt {

namespace {

double require(const DgpSpec& spec, const std::string& key) {
    const auto it = spec.parameters.find(key);
    if (it == spec.parameters.end())
        throw DataError("dgp " + spec.name + ": missing parameter '" + key + "'");
    return it->second;
}

double param_or(const DgpSpec& spec, const std::string& key, double fallback) {
    const auto it = spec.parameters.find(key);
    return it == spec.parameters.end() ? fallback : it->second;
}

void reject_unknown(const DgpSpec& spec, std::initializer_list<const char*> known) {
    for (const auto& [key, value] : spec.parameters) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok)
            throw DataError("dgp " + spec.name + ": unknown parameter '" + key + "'");
    }
}

}  // namespace

std::pair<Dataset, AdditiveFunction> generate(const DgpSpec& spec) {
    if (spec.n < 1) throw DataError("dgp " + spec.name + ": n must be >= 1");
    Rng rng(spec.seed);

    int p = 0;
    AdditiveFunction g;
    double noise_scale = 0;          // constant noise sd; 0 disables
    bool heteroskedastic = false;    // overfit5: sd = 10 * x3
    if (spec.name == "model1" || spec.name == "model2") {
        reject_unknown(spec, {});
        p = 10;
        const double betas[4] = {10, 8, 6, 2};
        for (int j = 0; j < p; ++j) {
            const double beta = j < 4 ? betas[j] : 0.0;
            if (beta == 0)
                g.components.push_back(zero_component(0, 1));
            else if (spec.name == "model1")
                g.components.push_back(linear_component(beta, 0, 1));
            else
                g.components.push_back(quadratic_component(beta, 0, 1));
        }
        noise_scale = 2;
    } else if (spec.name == "model3") {
        reject_unknown(spec, {});
        p = 10;
        g.components.push_back(linear_component(6, 0, 1));
        g.components.push_back(linear_component(10, 0, 1));
        g.components.push_back(step_component(8, 0.5, 0, 1));
        g.components.push_back(step_component(4, 0.6, 0, 1));
        for (int j = 4; j < p; ++j) g.components.push_back(zero_component(0, 1));
        noise_scale = 2;
    } else if (spec.name == "model4") {
        reject_unknown(spec, {});
        p = 10;
        g.components.push_back(ramp_component(6, 0.5, 0, 1));
        g.components.push_back(sqrt_component(10, 0, 1));
        g.components.push_back(sin_half_pi_component(8, 0, 1));
        g.components.push_back(cos_pi_component(4, 0, 1));
        for (int j = 4; j < p; ++j) g.components.push_back(zero_component(0, 1));
        noise_scale = 2;
    } else if (spec.name == "overfit5") {
        reject_unknown(spec, {"beta"});
        p = 5;
        const double beta = param_or(spec, "beta", 1.0);
        g.components.push_back(linear_component(10 * beta, 0, 1));
        g.components.push_back(linear_component(8 * beta, 0, 1));
        g.components.push_back(linear_component(6 * beta, 0, 1));
        g.components.push_back(zero_component(0, 1));
        g.components.push_back(zero_component(0, 1));
        heteroskedastic = true;
    } else if (spec.name == "simple_linear") {
        reject_unknown(spec, {"c0", "c1", "extra_covariates"});
        const double c0 = require(spec, "c0");
        const double c1 = require(spec, "c1");
        const double extra_raw = param_or(spec, "extra_covariates", 0.0);
        const int extra = static_cast<int>(extra_raw);
        if (extra < 0 || extra_raw != extra)
            throw DataError("dgp simple_linear: extra_covariates must be a "
                            "non-negative integer");
        p = 1 + extra;
        g.intercept = c0;
        g.components.push_back(c1 == 0 ? zero_component(0, 1)
                                       : linear_component(c1, 0, 1));
        for (int j = 1; j < p; ++j) g.components.push_back(zero_component(0, 1));
        noise_scale = 1;
    } else if (spec.name == "cubic1d") {
        reject_unknown(spec, {});
        p = 1;
        g.components.push_back(cubic_component(1, -1, 1));
        noise_scale = 0;
    } else {
        throw DataError("dgp: unknown name '" + spec.name + "'");
    }

    Eigen::MatrixXd x(spec.n, p);
    Eigen::VectorXd y(spec.n);
    Eigen::VectorXd point(p);
    for (long i = 0; i < spec.n; ++i) {
        for (int j = 0; j < p; ++j) {
            double u = uniform_open_closed(rng);
            if (spec.name == "cubic1d") u = 2.0 * u - 1.0;  // Uniform(-1, 1]
            x(i, j) = u;
            point[j] = u;
        }
        double noise = 0;
        if (heteroskedastic)
            noise = 10.0 * x(i, 2) * normal01(rng);
        else if (noise_scale > 0)
            noise = noise_scale * normal01(rng);
        y[i] = g(point) + noise;
    }
    return {make_dataset(std::move(x), std::move(y)), std::move(g)};
}

}  // namespace covrt
