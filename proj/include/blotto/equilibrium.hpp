#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "blotto/model.hpp"

namespace blotto {

/// Per-booth inspection probabilities over the argmax set A:
/// p_a = 1 - g'_a(z*_a)/theta. They sum to K.
struct InspectionMarginals {
    std::vector<int> booths;     // members of A, ascending 0-based indices
    std::vector<double> p;       // aligned with `booths`
};

/// Finite-support distribution over K-sized subsets of A whose induced
/// one-dimensional marginals equal the inspection marginals.
struct SubsetDistribution {
    std::vector<std::pair<std::vector<int>, double>> support;  // (sorted subset, mass)
};

struct NashCertificate {
    bool pass = false;
    std::vector<std::string> failures;  // tagged "inspector:" / "stuffer:"
    double inspector_value = 0.0;       // common surviving votes of A-subsets
    double expected_payoff = 0.0;       // sum_A (1-p_a) z_a + sum_{B,C} z_j
};

/// p_a = 1 - g'_a(z*_a)/theta for each a in A. Requires a certified solution;
/// the K-sum postcondition is asserted (std::logic_error on violation).
InspectionMarginals equilibrium_marginals(const EquilibriumSolution& solution,
                                          const GameInstance& instance);

/// Greedy Caratheodory-style decomposition of marginals into a distribution
/// over K-subsets: repeatedly pick the K largest residuals (ties to lowest
/// index) and assign them the largest mass that keeps every residual inside
/// [0, remaining]. Terminates in at most |A| iterations with support size at
/// most |A| and reproduces the marginals by construction.
SubsetDistribution decompose_marginals(const InspectionMarginals& marginals,
                                       int inspectors);

/// Induced marginals sum_{I : a in I} q_I of a subset distribution, reported
/// for the given booth ids.
std::vector<double> induced_marginals(const SubsetDistribution& dist,
                                      const std::vector<int>& booths);

/// Draws one subset; deterministic for a fixed seed.
std::vector<int> sample_inspection(const SubsetDistribution& dist, std::uint64_t seed);

/// Expected surviving stuffed votes of an arbitrary plan z against inspection
/// marginals (p taken as 0 off the marginal support).
double expected_surviving(const std::vector<double>& z,
                          const InspectionMarginals& marginals);

/// Checks that (z*, marginals) is a mutual best response:
/// (a) inspector side: every K-subset of A removes the same (maximal) amount
///     and subsets touching B or C do weakly worse, by direct enumeration;
/// (b) stuffer side: under the transform g_hat_a(w) = g_a(w/(1-p_a)) the
///     marginals of the transformed problem are constant (= theta) across
///     A and B and at least theta on C, i.e. z* solves the no-inspector
///     waterfill of the transformed problem; also checks the expected-payoff
///     identity against payoff(z*, K).
NashCertificate verify_nash(const GameInstance& instance,
                            const EquilibriumSolution& solution,
                            const InspectionMarginals& marginals,
                            double tol = kCertifyTol);

namespace detail {

// Core greedy, templated so tests can run it in exact rational arithmetic.
// Residuals are positional; masses come out in emission order. The remaining
// mass is recomputed from the residual sum every iteration (the two are tied
// by sum r = k * remaining), which keeps near-tie inputs from stalling on
// rounding drift.
template <class T>
std::vector<std::pair<std::vector<int>, T>> decompose_greedy(std::vector<T> residual,
                                                             int k) {
    const int n = static_cast<int>(residual.size());
    if (k <= 0) return {{std::vector<int>{}, T(1)}};
    if (k > n) throw std::invalid_argument("decompose_greedy: k exceeds dimension");

    std::vector<std::pair<std::vector<int>, T>> out;
    std::vector<int> order(n);

    for (int iter = 0; iter < n; ++iter) {
        T total(0);
        for (const T& r : residual) total = total + r;
        if (!(total > T(0))) break;
        const T remaining = total / T(k);

        for (int i = 0; i < n; ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            if (residual[a] != residual[b]) return residual[b] < residual[a];
            return a < b;  // ties to lowest index
        });

        std::vector<int> chosen(order.begin(), order.begin() + k);
        T gamma = residual[chosen.front()];
        for (int i : chosen) gamma = std::min(gamma, residual[i]);

        bool covers_all_nonzero = true;
        T max_out(0);
        for (int i = k; i < n; ++i) {
            if (residual[order[i]] > T(0)) covers_all_nonzero = false;
            max_out = std::max(max_out, residual[order[i]]);
        }
        if (!covers_all_nonzero) gamma = std::min(gamma, remaining - max_out);
        gamma = std::min(gamma, remaining);
        std::sort(chosen.begin(), chosen.end());

        if (!(gamma > T(0))) {
            if constexpr (std::is_floating_point_v<T>) {
                // Only rounding dust can reach here; hand it to the current
                // subset and finish.
                if (remaining <= 1e-12) {
                    out.emplace_back(std::move(chosen), remaining);
                    return out;
                }
            }
            throw std::logic_error("decompose_greedy: stalled (invalid marginals?)");
        }

        for (int i : chosen) residual[i] = residual[i] - gamma;
        out.emplace_back(std::move(chosen), gamma);
    }

    T leftover(0);
    for (const T& r : residual) leftover = leftover + r;
    if constexpr (std::is_floating_point_v<T>) {
        if (leftover > 1e-12 * k)
            throw std::logic_error("decompose_greedy: mass left after n iterations");
    } else {
        if (leftover > T(0))
            throw std::logic_error("decompose_greedy: mass left after n iterations");
    }
    return out;
}

}  // namespace detail

}  // namespace blotto
