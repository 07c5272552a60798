#include "covrt/additive.hpp"

#include <cmath>
#include <stdexcept>

namespace covrt {

namespace {
constexpr double kPi = 3.14159265358979323846;

void check_domain(const Component& c) {
    if (!(c.a < c.b))
        throw std::invalid_argument("component: degenerate domain");
}
}  // namespace

double Component::operator()(double x) const {
    switch (form) {
        case ComponentForm::zero: return 0;
        case ComponentForm::linear: return beta * x;
        case ComponentForm::quadratic: return beta * x * x;
        case ComponentForm::step: return x > cut ? beta : 0.0;
        case ComponentForm::ramp: return x > cut ? beta * x : 0.0;
        case ComponentForm::sqrt_form: return beta * std::sqrt(x);
        case ComponentForm::sin_half_pi: return beta * std::sin(0.5 * kPi * x);
        case ComponentForm::cos_pi: return beta * std::cos(kPi * x);
        case ComponentForm::cubic: return beta * x * x * x;
        case ComponentForm::piecewise_linear: {
            if (x <= knots.front()) return values.front();
            if (x >= knots.back()) return values.back();
            std::size_t hi = 1;
            while (knots[hi] < x) ++hi;
            const double w = (x - knots[hi - 1]) / (knots[hi] - knots[hi - 1]);
            return values[hi - 1] + w * (values[hi] - values[hi - 1]);
        }
    }
    throw std::logic_error("component: unknown form");
}

double Component::total_variation() const {
    switch (form) {
        case ComponentForm::zero:
            return 0;
        case ComponentForm::linear:
            return std::abs(beta) * (b - a);
        case ComponentForm::quadratic:
            // monotone on each side of 0
            if (a >= 0 || b <= 0) return std::abs(beta) * std::abs(b * b - a * a);
            return std::abs(beta) * (a * a + b * b);
        case ComponentForm::step:
            return (cut >= a && cut < b) ? std::abs(beta) : 0.0;
        case ComponentForm::ramp: {
            // jump of beta*cut at the cut plus the linear rise beyond it
            if (cut >= b) return 0;
            if (cut < a) return std::abs(beta) * (b - a);
            return std::abs(beta) * cut + std::abs(beta) * (b - cut);
        }
        case ComponentForm::sqrt_form:
            if (a < 0) throw std::invalid_argument("component: sqrt needs a >= 0");
            return std::abs(beta) * (std::sqrt(b) - std::sqrt(a));
        case ComponentForm::sin_half_pi:
            // monotone on [0, 1]
            if (a < 0 || b > 1)
                throw std::invalid_argument("component: sin form needs domain in [0,1]");
            return std::abs(beta) * (std::sin(0.5 * kPi * b) - std::sin(0.5 * kPi * a));
        case ComponentForm::cos_pi:
            // monotone decreasing on [0, 1]
            if (a < 0 || b > 1)
                throw std::invalid_argument("component: cos form needs domain in [0,1]");
            return std::abs(beta) * (std::cos(kPi * a) - std::cos(kPi * b));
        case ComponentForm::cubic:
            return std::abs(beta) * std::abs(b * b * b - a * a * a);
        case ComponentForm::piecewise_linear: {
            double tv = 0;
            for (std::size_t i = 1; i < values.size(); ++i)
                tv += std::abs(values[i] - values[i - 1]);
            return tv;
        }
    }
    throw std::logic_error("component: unknown form");
}

namespace {
Component base(ComponentForm form, double beta, double a, double b) {
    Component c;
    c.form = form;
    c.beta = beta;
    c.a = a;
    c.b = b;
    check_domain(c);
    return c;
}
}  // namespace

Component zero_component(double a, double b) { return base(ComponentForm::zero, 0, a, b); }
Component linear_component(double beta, double a, double b) {
    return base(ComponentForm::linear, beta, a, b);
}
Component quadratic_component(double beta, double a, double b) {
    return base(ComponentForm::quadratic, beta, a, b);
}
Component step_component(double beta, double cut, double a, double b) {
    Component c = base(ComponentForm::step, beta, a, b);
    c.cut = cut;
    return c;
}
Component ramp_component(double beta, double cut, double a, double b) {
    Component c = base(ComponentForm::ramp, beta, a, b);
    c.cut = cut;
    return c;
}
Component sqrt_component(double beta, double a, double b) {
    return base(ComponentForm::sqrt_form, beta, a, b);
}
Component sin_half_pi_component(double beta, double a, double b) {
    return base(ComponentForm::sin_half_pi, beta, a, b);
}
Component cos_pi_component(double beta, double a, double b) {
    return base(ComponentForm::cos_pi, beta, a, b);
}
Component cubic_component(double beta, double a, double b) {
    return base(ComponentForm::cubic, beta, a, b);
}
Component piecewise_linear_component(std::vector<double> knots,
                                     std::vector<double> values) {
    if (knots.size() < 2 || knots.size() != values.size())
        throw std::invalid_argument("component: knots/values length mismatch");
    for (std::size_t i = 1; i < knots.size(); ++i)
        if (!(knots[i - 1] < knots[i]))
            throw std::invalid_argument("component: knots must strictly increase");
    for (double v : values)
        if (!std::isfinite(v))
            throw std::invalid_argument("component: non-finite value");
    Component c;
    c.form = ComponentForm::piecewise_linear;
    c.a = knots.front();
    c.b = knots.back();
    c.knots = std::move(knots);
    c.values = std::move(values);
    return c;
}

double AdditiveFunction::operator()(
    const Eigen::Ref<const Eigen::VectorXd>& x) const {
    if (x.size() != static_cast<Eigen::Index>(components.size()))
        throw std::invalid_argument("additive function: dimension mismatch");
    double total = intercept;
    for (std::size_t j = 0; j < components.size(); ++j)
        total += components[j](x[static_cast<Eigen::Index>(j)]);
    return total;
}

double tv_norm(const AdditiveFunction& g) {
    double total = 0;
    for (const Component& c : g.components) {
        const double tv = c.total_variation();
        if (!std::isfinite(tv))
            throw std::invalid_argument("tv_norm: unbounded component variation");
        total += tv;
    }
    return total;
}

}  // namespace covrt
