#include "blotto/solver_general.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "blotto/rootfind.hpp"

namespace blotto {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Membership band for assigning a booth to A: non-strict comparisons, ties
// toward A (keeps |A| maximal, the direction the cardinality bound needs).
double a_band(double theta) { return 1e-12 * theta; }

// theta solving the structure-slope identity sum_{A} g'_j(m) = (|A|-K) theta
// with A = {j : g'_j(m) <= theta}, at fixed m. H(theta) = sum_A s_j -
// (|A|-K) theta is continuous piecewise linear, nonnegative up to the unique
// crossing and strictly decreasing past it, so we bisect on the sign.
// Returns +inf when fewer than K+1 booths can reach level m at all (only
// possible for domain-capped costs); the caller treats that as infinite
// budget and moves the outer search left.
double solve_theta(const GameInstance& instance, double m) {
    const int j = instance.booths();
    const int k = instance.inspectors;
    std::vector<double> slope(j);
    double max_finite = 0.0;
    int finite = 0;
    for (int i = 0; i < j; ++i) {
        slope[i] = instance.costs[i].derivative(m);
        if (std::isfinite(slope[i])) {
            ++finite;
            max_finite = std::max(max_finite, slope[i]);
        }
    }
    if (finite <= k) return kInf;

    auto h = [&](double theta) {
        double sum = 0.0;
        int card = 0;
        for (int i = 0; i < j; ++i) {
            if (slope[i] <= theta) {
                sum += slope[i];
                ++card;
            }
        }
        return sum - (card - k) * theta;
    };

    double hi = std::max(1.0, 2.0 * max_finite);
    for (int it = 0; h(hi) >= 0.0; ++it) {
        if (it > 200) throw std::runtime_error("solve_theta: no crossing found");
        hi *= 2.0;
    }
    double lo = 0.0;
    for (int it = 0; it < 400; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (h(mid) >= 0.0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-13 * (std::abs(lo) + std::abs(hi))) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> candidate_from_levels(const GameInstance& instance, double m,
                                          double theta) {
    const int j = instance.booths();
    std::vector<double> z(j, 0.0);
    const double band = a_band(theta);
    for (int i = 0; i < j; ++i) {
        const double s = instance.costs[i].derivative(m);
        if (s <= theta + band) {
            z[i] = m;  // waterfill level reaches the max; booth sits in A
        } else if (instance.costs[i].derivative(0.0) < theta) {
            z[i] = instance.costs[i].inverse_derivative(theta);  // interior, set B
        }  // else entry slope already above theta: set C, z stays 0
    }
    return z;
}

EquilibriumSolution solve_general(const GameInstance& instance) {
    instance.validate();

    // Budget spent along the (m, theta(m)) path; strictly increasing in m.
    auto spent = [&](double m) {
        if (m <= 0.0) return 0.0;
        const double theta = solve_theta(instance, m);
        if (!std::isfinite(theta)) return kInf;
        const auto z = candidate_from_levels(instance, m, theta);
        double s = 0.0;
        for (int i = 0; i < instance.booths(); ++i) s += instance.costs[i].value(z[i]);
        return s;
    };

    const double hi = detail::expand_upper(spent, instance.budget, 1.0);
    const double m = detail::bisect_increasing(spent, instance.budget, 0.0, hi, 1e-12);
    const double theta = solve_theta(instance, m);

    EquilibriumSolution sol;
    sol.z = candidate_from_levels(instance, m, theta);
    sol.partition = partition_of(sol.z);
    if (static_cast<int>(sol.partition.A.size()) <= instance.inspectors)
        throw std::logic_error("solve_general: infeasible structure (|A| <= K)");
    sol.theta = structure_slope(instance, sol.z, sol.partition);
    sol.payoff = payoff(sol.z, instance.inspectors);

    const auto cert = verify_structure(instance, sol.z);
    if (!cert.pass) {
        std::string what = "solve_general: candidate failed certification:";
        for (const auto& v : cert.violations) what += " [" + v + "]";
        throw std::runtime_error(what);
    }
    return sol;
}

EquilibriumSolution oracle_solve(const GameInstance& instance) {
    instance.validate();
    const int j = instance.booths();
    const int k = instance.inspectors;
    if (j > 12) throw std::invalid_argument("oracle_solve: enumeration limited to J <= 12");

    std::vector<std::vector<double>> certified;

    for (unsigned mask = 1; mask < (1u << j); ++mask) {
        const int card = std::popcount(mask);
        if (card <= k) continue;

        std::vector<int> members;
        for (int i = 0; i < j; ++i)
            if (mask & (1u << i)) members.push_back(i);

        auto theta_of = [&](double m) {
            double s = 0.0;
            for (int i : members) s += instance.costs[i].derivative(m);
            return s / (card - k);
        };
        // Budget as a function of the common A-value; every term increases.
        auto spent = [&](double m) {
            if (m <= 0.0) return 0.0;
            const double theta = theta_of(m);
            if (!std::isfinite(theta)) return kInf;
            double s = 0.0;
            for (int i : members) s += instance.costs[i].value(m);
            for (int i = 0; i < j; ++i) {
                if (mask & (1u << i)) continue;
                if (instance.costs[i].derivative(0.0) < theta)
                    s += instance.costs[i].value(instance.costs[i].inverse_derivative(theta));
            }
            return s;
        };

        double m;
        try {
            const double hi = detail::expand_upper(spent, instance.budget, 1.0);
            m = detail::bisect_increasing(spent, instance.budget, 0.0, hi, 1e-12);
        } catch (const std::runtime_error&) {
            continue;  // this A cannot spend the budget inside the domain
        }

        const double theta = theta_of(m);
        std::vector<double> z(j, 0.0);
        for (int i : members) z[i] = m;
        for (int i = 0; i < j; ++i) {
            if (mask & (1u << i)) continue;
            if (instance.costs[i].derivative(0.0) < theta)
                z[i] = instance.costs[i].inverse_derivative(theta);
        }

        if (verify_structure(instance, z).pass) certified.push_back(std::move(z));
    }

    if (certified.empty())
        throw std::runtime_error("oracle-inconsistency: no candidate passed certification");

    // Adjacent A-enumerations legitimately describe the same vector at
    // set-transition ties; uniqueness is over distinct vectors.
    auto same = [](const std::vector<double>& a, const std::vector<double>& b) {
        for (size_t i = 0; i < a.size(); ++i) {
            if (std::abs(a[i] - b[i]) > 1e-6 * std::max({1.0, std::abs(a[i]), std::abs(b[i])}))
                return false;
        }
        return true;
    };
    for (size_t i = 1; i < certified.size(); ++i) {
        if (!same(certified[0], certified[i]))
            throw std::runtime_error(
                "oracle-inconsistency: multiple distinct certified candidates");
    }

    EquilibriumSolution sol;
    sol.z = certified.front();
    sol.partition = partition_of(sol.z);
    sol.theta = structure_slope(instance, sol.z, sol.partition);
    sol.payoff = payoff(sol.z, instance.inspectors);
    return sol;
}

}  // namespace blotto
