#pragma once

#include <functional>
#include <limits>
#include <string>

namespace blotto {

/// Strictly convex, increasing per-booth stuffing cost with g(0) = 0.
///
/// Every algorithm in the library touches a cost only through the three
/// evaluators value g(z), derivative g'(z) and inverse derivative (g')^-1(s),
/// so the class is an evaluator triple rather than a symbolic expression.
/// When no closed-form inverse derivative is supplied it is computed by
/// bisection on g' (g' strictly increasing guarantees a unique root).
class CostFunction {
public:
    using Fn = std::function<double(double)>;

    /// a * z^p with a > 0, p > 1.
    static CostFunction power(double coef, double exponent);

    /// a * z^2 with a > 0.
    static CostFunction scaled_quadratic(double coef);

    /// Caller-supplied evaluators (covers table-defined strictly convex costs).
    /// `inverse_derivative` may be empty; `arg_limit` bounds the valid argument
    /// range (evaluations at or beyond it report +inf cost / +inf slope).
    static CostFunction custom(std::string kind, Fn value, Fn derivative,
                               Fn inverse_derivative = {},
                               double arg_limit = std::numeric_limits<double>::infinity());

    double value(double z) const;
    double derivative(double z) const;

    /// (g')^-1(s); returns 0 for s <= g'(0).
    double inverse_derivative(double slope) const;

    const std::string& kind() const { return kind_; }
    double arg_limit() const { return arg_limit_; }

    bool is_power() const { return has_power_form_; }
    double coef() const { return coef_; }
    double exponent() const { return exponent_; }

private:
    CostFunction() = default;

    std::string kind_;
    Fn value_;
    Fn derivative_;
    Fn inverse_derivative_;   // may be empty -> bisection fallback
    double arg_limit_ = std::numeric_limits<double>::infinity();
    bool has_power_form_ = false;
    double coef_ = 0.0;
    double exponent_ = 0.0;
};

}  // namespace blotto
