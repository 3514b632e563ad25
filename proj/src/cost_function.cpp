#include "blotto/cost_function.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "blotto/rootfind.hpp"

namespace blotto {

CostFunction CostFunction::power(double coef, double exponent) {
    if (!(coef > 0.0)) throw std::invalid_argument("power cost: coef must be > 0");
    if (!(exponent > 1.0)) throw std::invalid_argument("power cost: exponent must be > 1");
    CostFunction g;
    g.kind_ = "power";
    g.has_power_form_ = true;
    g.coef_ = coef;
    g.exponent_ = exponent;
    g.value_ = [coef, exponent](double z) { return coef * std::pow(z, exponent); };
    g.derivative_ = [coef, exponent](double z) {
        return coef * exponent * std::pow(z, exponent - 1.0);
    };
    g.inverse_derivative_ = [coef, exponent](double s) {
        return std::pow(s / (coef * exponent), 1.0 / (exponent - 1.0));
    };
    return g;
}

CostFunction CostFunction::scaled_quadratic(double coef) {
    if (!(coef > 0.0)) throw std::invalid_argument("scaled_quadratic cost: coef must be > 0");
    CostFunction g;
    g.kind_ = "scaled_quadratic";
    g.has_power_form_ = true;
    g.coef_ = coef;
    g.exponent_ = 2.0;
    g.value_ = [coef](double z) { return coef * z * z; };
    g.derivative_ = [coef](double z) { return 2.0 * coef * z; };
    g.inverse_derivative_ = [coef](double s) { return s / (2.0 * coef); };
    return g;
}

CostFunction CostFunction::custom(std::string kind, Fn value, Fn derivative,
                                  Fn inverse_derivative, double arg_limit) {
    if (!value || !derivative)
        throw std::invalid_argument("custom cost: value and derivative evaluators required");
    CostFunction g;
    g.kind_ = std::move(kind);
    g.value_ = std::move(value);
    g.derivative_ = std::move(derivative);
    g.inverse_derivative_ = std::move(inverse_derivative);
    g.arg_limit_ = arg_limit;
    return g;
}

double CostFunction::value(double z) const {
    if (z >= arg_limit_) return std::numeric_limits<double>::infinity();
    return value_(z);
}

double CostFunction::derivative(double z) const {
    if (z >= arg_limit_) return std::numeric_limits<double>::infinity();
    return derivative_(z);
}

double CostFunction::inverse_derivative(double slope) const {
    if (slope <= derivative(0.0)) return 0.0;
    if (inverse_derivative_) return inverse_derivative_(slope);
    // Fallback: bisection on the strictly increasing derivative. Stay a hair
    // inside arg_limit so the bracket stays finite.
    const double cap = std::isfinite(arg_limit_)
                           ? arg_limit_ * (1.0 - 1e-12)
                           : std::numeric_limits<double>::infinity();
    auto d = [this](double z) { return derivative_(z); };
    const double hi = detail::expand_upper(d, slope, 1.0, cap);
    return detail::bisect_increasing(d, slope, 0.0, hi, 1e-12);
}

}  // namespace blotto
