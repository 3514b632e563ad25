#include "blotto/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "blotto/rng.hpp"

namespace blotto {

InspectionMarginals equilibrium_marginals(const EquilibriumSolution& solution,
                                          const GameInstance& instance) {
    if (solution.theta <= 0.0)
        throw std::logic_error("equilibrium_marginals: nonpositive structure slope");

    InspectionMarginals m;
    for (int a : solution.partition.A) {
        double pa = 1.0 - instance.costs[a].derivative(solution.z[a]) / solution.theta;
        // Certified solutions keep slopes within the tolerance band of theta,
        // so clamp band-edge dust back into [0, 1].
        if (pa < 0.0 && pa > -1e-8) pa = 0.0;
        if (pa > 1.0 && pa < 1.0 + 1e-8) pa = 1.0;
        if (pa < 0.0 || pa > 1.0)
            throw std::logic_error("equilibrium_marginals: p outside [0,1] (uncertified input?)");
        m.booths.push_back(a);
        m.p.push_back(pa);
    }

    double sum = 0.0;
    for (double pa : m.p) sum += pa;
    if (std::abs(sum - instance.inspectors) > 1e-10 * std::max(1.0, double(instance.inspectors)))
        throw std::logic_error("equilibrium_marginals: sum p != K (got " +
                               std::to_string(sum) + ")");
    return m;
}

SubsetDistribution decompose_marginals(const InspectionMarginals& marginals,
                                       int inspectors) {
    const int n = static_cast<int>(marginals.p.size());
    if (static_cast<int>(marginals.booths.size()) != n)
        throw std::invalid_argument("decompose_marginals: booths/p length mismatch");
    double sum = 0.0;
    for (double pa : marginals.p) {
        if (pa < -1e-9 || pa > 1.0 + 1e-9)
            throw std::invalid_argument("decompose_marginals: marginal outside [0,1]");
        sum += pa;
    }
    if (std::abs(sum - inspectors) > 1e-9 * std::max(1.0, double(inspectors)))
        throw std::invalid_argument("decompose_marginals: marginals do not sum to K");

    std::vector<double> residual(marginals.p);
    for (double& r : residual) r = std::clamp(r, 0.0, 1.0);

    const auto raw = detail::decompose_greedy<double>(std::move(residual), inspectors);

    // The greedy may in principle emit a subset twice; merge masses so the
    // support is a map.
    std::map<std::vector<int>, double> merged;
    for (const auto& [positions, mass] : raw) {
        std::vector<int> subset;
        subset.reserve(positions.size());
        for (int pos : positions) subset.push_back(marginals.booths[pos]);
        merged[subset] += mass;
    }

    SubsetDistribution dist;
    for (auto& [subset, mass] : merged) dist.support.emplace_back(subset, mass);
    return dist;
}

std::vector<double> induced_marginals(const SubsetDistribution& dist,
                                      const std::vector<int>& booths) {
    std::vector<double> out(booths.size(), 0.0);
    for (const auto& [subset, mass] : dist.support) {
        for (int member : subset) {
            for (size_t i = 0; i < booths.size(); ++i)
                if (booths[i] == member) out[i] += mass;
        }
    }
    return out;
}

std::vector<int> sample_inspection(const SubsetDistribution& dist, std::uint64_t seed) {
    if (dist.support.empty())
        throw std::invalid_argument("sample_inspection: empty support");
    std::mt19937_64 rng(seed);
    const double u = detail::uniform01(rng);
    double acc = 0.0;
    for (const auto& [subset, mass] : dist.support) {
        acc += mass;
        if (u < acc) return subset;
    }
    return dist.support.back().first;  // u landed in rounding dust at the top
}

double expected_surviving(const std::vector<double>& z,
                          const InspectionMarginals& marginals) {
    double total = 0.0;
    for (double v : z) total += v;
    for (size_t i = 0; i < marginals.booths.size(); ++i)
        total -= marginals.p[i] * z[marginals.booths[i]];
    return total;
}

namespace {

// Visits every K-subset of {0,...,n-1}; f gets the index vector.
template <typename F>
void for_each_subset(int n, int k, F&& f) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    if (k == 0) {
        f(idx);
        return;
    }
    while (true) {
        f(idx);
        int pos = k - 1;
        while (pos >= 0 && idx[pos] == n - k + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
}

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

}  // namespace

NashCertificate verify_nash(const GameInstance& instance,
                            const EquilibriumSolution& solution,
                            const InspectionMarginals& marginals, double tol) {
    NashCertificate cert;
    const int j = instance.booths();
    const int k = instance.inspectors;
    const auto& z = solution.z;
    const double theta = solution.theta;
    const double band = tol * std::abs(theta);  // slope comparisons scale with theta

    std::vector<double> p_full(j, 0.0);
    std::vector<bool> in_a(j, false);
    for (size_t i = 0; i < marginals.booths.size(); ++i) {
        p_full[marginals.booths[i]] = marginals.p[i];
        in_a[marginals.booths[i]] = true;
    }

    // (a) Inspector side: removing any K booths of A yields the same surviving
    // total, and touching B or C removes less (weakly worse for the
    // minimizer). Direct enumeration when the subset count is reasonable,
    // otherwise the single dominant deviation is checked.
    double total = 0.0;
    for (double v : z) total += v;

    double a_value = 0.0;
    {
        double removed = 0.0;
        int count = 0;
        for (int a : solution.partition.A) {
            if (count++ == k) break;
            removed += z[a];
        }
        a_value = total - removed;
    }
    cert.inspector_value = a_value;

    const double value_band = tol * std::max(1.0, std::abs(a_value));
    if (binomial(j, k) <= 2e5) {
        for_each_subset(j, k, [&](const std::vector<int>& idx) {
            double removed = 0.0;
            bool pure_a = true;
            for (int i : idx) {
                removed += z[i];
                pure_a = pure_a && in_a[i];
            }
            const double value = total - removed;
            if (pure_a && std::abs(value - a_value) > value_band)
                cert.failures.push_back("inspector: unequal value among A-subsets");
            if (!pure_a && value < a_value - value_band)
                cert.failures.push_back("inspector: subset outside A does better");
        });
    } else {
        // Best deviation off A: swap the smallest A pick for the largest z in B/C.
        double best_off = 0.0;
        for (int b : solution.partition.B) best_off = std::max(best_off, z[b]);
        double removed = 0.0;
        int count = 0;
        for (int a : solution.partition.A) {
            if (count++ == k - 1) break;
            removed += z[a];
        }
        if (k >= 1 && total - (removed + best_off) < a_value - value_band)
            cert.failures.push_back("inspector: subset outside A does better");
    }

    // (b) Stuffer side: in the transformed problem the marginal at z* must be
    // theta across A and B and at least theta on C, i.e. z* is the
    // no-inspector waterfill of the transformed costs. The transformed slope
    // identity g'_a/(1-p_a) = theta is checked in product form: dividing by
    // 1-p_a amplifies its rounding without bound as p_a -> 1.
    for (int a : solution.partition.A) {
        const double slope = instance.costs[a].derivative(z[a]);
        if (std::abs(slope - (1.0 - p_full[a]) * theta) > band)
            cert.failures.push_back("stuffer: transformed slope != theta at booth " +
                                    std::to_string(a + 1) + " (g'=" + std::to_string(slope) +
                                    ", (1-p)theta=" +
                                    std::to_string((1.0 - p_full[a]) * theta) + ")");
    }
    for (int b : solution.partition.B) {
        const double s = instance.costs[b].derivative(z[b]);
        if (std::abs(s - theta) > band)
            cert.failures.push_back("stuffer: interior slope != theta at booth " +
                                    std::to_string(b + 1));
    }
    for (int c : solution.partition.C) {
        if (instance.costs[c].derivative(0.0) >= theta - band) continue;
        // Borderline interior booth inside the C band; same tie rule as the
        // structure certifier.
        if (z[c] > 0.0 && std::abs(instance.costs[c].derivative(z[c]) - theta) <= band)
            continue;
        cert.failures.push_back("stuffer: entry slope below theta at booth " +
                                std::to_string(c + 1));
    }

    cert.expected_payoff = expected_surviving(z, marginals);
    if (std::abs(cert.expected_payoff - solution.payoff) >
        tol * std::max(1.0, std::abs(solution.payoff)))
        cert.failures.push_back("stuffer: expected payoff " +
                                std::to_string(cert.expected_payoff) + " != U=" +
                                std::to_string(solution.payoff));

    cert.pass = cert.failures.empty();
    return cert;
}

}  // namespace blotto
