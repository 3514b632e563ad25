#include "blotto/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace blotto {

void GameInstance::validate() const {
    if (booths() < 2) throw std::invalid_argument("GameInstance: at least 2 booths required");
    if (!(budget > 0.0)) throw std::invalid_argument("GameInstance: budget must be > 0");
    if (inspectors < 0 || inspectors >= booths())
        throw std::invalid_argument("GameInstance: inspectors must satisfy 0 <= K < J");
}

double payoff(const std::vector<double>& z, int inspectors) {
    const int j = static_cast<int>(z.size());
    if (inspectors < 0 || inspectors >= j)
        throw std::invalid_argument("payoff: inspectors must satisfy 0 <= K < J");
    std::vector<double> sorted(z);
    std::sort(sorted.begin(), sorted.end());
    return std::accumulate(sorted.begin(), sorted.end() - inspectors, 0.0);
}

StructurePartition partition_of(const std::vector<double>& z, double tie_tolerance) {
    if (z.empty()) throw std::invalid_argument("partition_of: empty vector");
    const double zmax = *std::max_element(z.begin(), z.end());
    if (zmax <= 0.0)
        throw std::invalid_argument("partition_of: degenerate all-zero vector");
    const double max_band = tie_tolerance * std::max(1.0, zmax);
    // The zero band shrinks with the vector scale so that genuinely interior
    // entries of very small solutions are not swallowed into C.
    const double zero_band = tie_tolerance * std::min(1.0, zmax);
    StructurePartition part;
    for (int i = 0; i < static_cast<int>(z.size()); ++i) {
        if (z[i] >= zmax - max_band)
            part.A.push_back(i);
        else if (z[i] <= zero_band)
            part.C.push_back(i);
        else
            part.B.push_back(i);
    }
    return part;
}

double structure_slope(const GameInstance& instance, const std::vector<double>& z,
                       const StructurePartition& partition) {
    const int denom = static_cast<int>(partition.A.size()) - instance.inspectors;
    if (denom <= 0) throw std::invalid_argument("structure_slope: |A| must exceed K");
    double sum = 0.0;
    for (int a : partition.A) sum += instance.costs[a].derivative(z[a]);
    return sum / denom;
}

StructureCertificate verify_structure(const GameInstance& instance,
                                      const std::vector<double>& z, double tol,
                                      double tie_tolerance) {
    instance.validate();
    if (static_cast<int>(z.size()) != instance.booths())
        throw std::invalid_argument("verify_structure: z length mismatch");

    StructureCertificate cert;
    StructurePartition part;
    try {
        part = partition_of(z, tie_tolerance);
    } catch (const std::invalid_argument&) {
        cert.violations.push_back("degenerate: all-zero stuffing vector");
        return cert;
    }

    const int cardA = static_cast<int>(part.A.size());
    if (cardA <= instance.inspectors) {
        cert.violations.push_back("cardinality: |A|=" + std::to_string(cardA) +
                                  " <= K=" + std::to_string(instance.inspectors) +
                                  " (cannot be optimal)");
        return cert;
    }

    const double theta = structure_slope(instance, z, part);
    cert.theta = theta;
    // Slope comparisons are relative to theta: every condition is homogeneous
    // of degree one in the marginals, so this keeps certification scale-free.
    const double slope_band = tol * std::abs(theta);

    for (int a : part.A) {
        const double s = instance.costs[a].derivative(z[a]);
        if (s > theta + slope_band)
            cert.violations.push_back("slope-order: booth " + std::to_string(a + 1) +
                                      " in A has g'=" + std::to_string(s) +
                                      " > theta=" + std::to_string(theta));
    }
    for (int c : part.C) {
        const double s0 = instance.costs[c].derivative(0.0);
        if (s0 >= theta - slope_band) continue;
        // A nonzero entry inside the C band is a borderline interior booth;
        // ties at the boundary count as satisfied, so the interior reading
        // is accepted for it as well.
        if (z[c] > 0.0 && std::abs(instance.costs[c].derivative(z[c]) - theta) <= slope_band)
            continue;
        cert.violations.push_back("slope-order: booth " + std::to_string(c + 1) +
                                  " in C has g'(0)=" + std::to_string(s0) +
                                  " < theta=" + std::to_string(theta));
    }
    for (int b : part.B) {
        const double s = instance.costs[b].derivative(z[b]);
        if (std::abs(s - theta) > slope_band)
            cert.violations.push_back("structure-slope: booth " + std::to_string(b + 1) +
                                      " in B has g'=" + std::to_string(s) +
                                      " != theta=" + std::to_string(theta));
    }

    double spent = 0.0;
    for (int i = 0; i < instance.booths(); ++i) spent += instance.costs[i].value(z[i]);
    cert.budget_residual = spent - instance.budget;
    if (std::abs(cert.budget_residual) > tol * std::max(1.0, instance.budget))
        cert.violations.push_back("budget: sum g_j(z_j)=" + std::to_string(spent) +
                                  " != G=" + std::to_string(instance.budget));

    cert.pass = cert.violations.empty();
    return cert;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double win_probability_plebiscite(const std::vector<BoothStatistics>& booths,
                                  double stuffed_total) {
    if (booths.empty())
        throw std::invalid_argument("win_probability_plebiscite: empty booth list");
    double mu = 0.0, var = 0.0;
    for (const auto& b : booths) {
        if (!(b.sigma > 0.0))
            throw std::invalid_argument("win_probability_plebiscite: sigma must be > 0");
        mu += b.mu;
        var += b.sigma * b.sigma;
    }
    return normal_cdf((mu + stuffed_total) / std::sqrt(var));
}

}  // namespace blotto
