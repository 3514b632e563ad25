#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "blotto/model.hpp"

namespace blotto {

/// Concave increasing per-booth win-probability gain with f(0) = 0.
class WinCurve {
public:
    /// f(z) = z. Reduction becomes the identity; mostly for tests.
    static WinCurve identity();

    /// f(z) = cap * (1 - e^{-z/scale}).
    static WinCurve exp_saturation(double cap, double scale);

    /// f(z) = Phi((mu+z)/sigma) - Phi(mu/sigma), the gain in the booth's win
    /// probability from stuffing z. For mu < 0 the raw curve is convex below
    /// z = -mu, so it is replaced there by its tangent line through the
    /// origin (the unique z_t > -mu with f(z_t) = z_t f'(z_t)); that keeps
    /// f' continuous and nonincreasing. Such curves report linearized().
    static WinCurve gaussian_gain(double mu, double sigma);

    /// Caller-supplied evaluators. `inverse` may be empty (bisection is used);
    /// the concave increasing contract is still probed wherever the curve
    /// enters a reduction.
    static WinCurve custom(std::string kind, std::function<double(double)> value,
                           std::function<double(double)> derivative,
                           std::function<double(double)> inverse = {},
                           double max_gain = 1.0);

    double value(double z) const { return value_(z); }
    double derivative(double z) const { return derivative_(z); }
    double inverse(double w) const;  // f^{-1}; requires 0 <= w < max_gain()

    double max_gain() const { return max_gain_; }  // sup of f
    bool linearized() const { return linearized_; }
    const std::string& kind() const { return kind_; }

private:
    WinCurve() = default;
    std::string kind_;
    std::function<double(double)> value_;
    std::function<double(double)> derivative_;
    std::function<double(double)> inverse_;  // may be empty -> bisection
    double max_gain_ = 0.0;
    bool linearized_ = false;
};

/// The parliamentary problem rewritten over win-probability gains w_j:
/// cost of reaching gain w_j is g_j(f_j^{-1}(w_j)). Solving this instance and
/// mapping back z_j = f_j^{-1}(w_j) gives the stuffing plan under the
/// expectation relaxation of the majority objective.
struct TransformedInstance {
    GameInstance game;            // costs over w-space
    std::vector<WinCurve> curves; // kept for mapping back
};

/// Builds the w-space instance. Each curve is probed for the concave
/// increasing / f(0)=0 contract on a grid spanning the budget-reachable
/// range; violations throw std::invalid_argument.
TransformedInstance transform_parliamentary(const std::vector<CostFunction>& costs,
                                            const std::vector<WinCurve>& curves,
                                            double budget, int inspectors);

/// z_j = f_j^{-1}(w_j).
std::vector<double> map_back(const TransformedInstance& transformed,
                             const std::vector<double>& w);

struct TailProbability {
    double value = 0.0;
    double std_error = 0.0;   // 0 for the exact path
    long draws = 0;           // 0 for the exact path
    std::string method;       // "exact_dp" or "monte_carlo"
};

/// P(#successes > n/2) for independent Bernoulli(win_probs[j]), exact O(n^2)
/// dynamic program. Strict majority: ties lose.
double poisson_binomial_tail_above_half(const std::vector<double>& win_probs);

/// Monte Carlo estimate of P(sum_j weight_j * Bernoulli(r_j) > W/2), sharded
/// into fixed blocks whose RNG substreams derive deterministically from the
/// seed, so the result is independent of thread count. Serial reference.
double weighted_majority_monte_carlo_serial(const std::vector<double>& win_probs,
                                            const std::vector<double>& weights,
                                            long draws, std::uint64_t seed);

/// OpenMP version of the same estimator; bit-identical to the serial one.
double weighted_majority_monte_carlo(const std::vector<double>& win_probs,
                                     const std::vector<double>& weights,
                                     long draws, std::uint64_t seed);

/// Parliamentary win probability with stuffing z and inspected booths y
/// (0-based indices): per-booth win probabilities r_j = Phi((mu_j +
/// (1-y_j) z_j)/sigma_j), then the exact DP tail when weights are all equal
/// and Monte Carlo (with standard error) otherwise.
TailProbability win_probability_parliamentary(const std::vector<BoothStatistics>& booths,
                                              const std::vector<double>& z,
                                              const std::vector<int>& inspected,
                                              std::uint64_t seed = 0,
                                              long draws = 1000000);

}  // namespace blotto
