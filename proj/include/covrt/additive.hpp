#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace covrt {

// Named univariate component shapes used by the simulation models, plus a
// generic piecewise-linear form. Each component lives on a domain (a, b].
enum class ComponentForm {
    zero,              // 0
    linear,            // beta * x
    quadratic,         // beta * x^2
    step,              // beta * 1{x > cut}
    ramp,              // beta * x * 1{x > cut}
    sqrt_form,         // beta * sqrt(x)
    sin_half_pi,       // beta * sin(0.5 * pi * x)
    cos_pi,            // beta * cos(pi * x)
    cubic,             // beta * x^3
    piecewise_linear,  // interpolation over (knots, values)
};

struct Component {
    ComponentForm form = ComponentForm::zero;
    double beta = 0;
    double a = 0;  // domain (a, b]
    double b = 1;
    double cut = 0.5;  // step / ramp location
    std::vector<double> knots;   // piecewise_linear, strictly increasing
    std::vector<double> values;  // same length as knots

    double operator()(double x) const;
    // Analytic total variation over (a, b].
    double total_variation() const;
};

Component zero_component(double a = 0, double b = 1);
Component linear_component(double beta, double a = 0, double b = 1);
Component quadratic_component(double beta, double a = 0, double b = 1);
Component step_component(double beta, double cut, double a = 0, double b = 1);
Component ramp_component(double beta, double cut, double a = 0, double b = 1);
Component sqrt_component(double beta, double a = 0, double b = 1);
Component sin_half_pi_component(double beta, double a = 0, double b = 1);
Component cos_pi_component(double beta, double a = 0, double b = 1);
Component cubic_component(double beta, double a = -1, double b = 1);
Component piecewise_linear_component(std::vector<double> knots,
                                     std::vector<double> values);

// Sum of univariate components, one per covariate, plus an intercept.
struct AdditiveFunction {
    std::vector<Component> components;
    double intercept = 0;

    double operator()(const Eigen::Ref<const Eigen::VectorXd>& x) const;
    int dimension() const { return static_cast<int>(components.size()); }
};

// Aggregated componentwise total variation for the given decomposition
// (an upper bound on the infimum-based norm). Throws if any component has
// unbounded or undefined variation.
double tv_norm(const AdditiveFunction& g);

}  // namespace covrt
