#pragma once

#include <string>
#include <vector>

#include "blotto/cost_function.hpp"

namespace blotto {

/// Default relative tie band for partition membership. The theory treats the
/// sets A/B/C exactly; floating point needs a band, and comparisons at the
/// boundaries are non-strict so ties count as satisfied.
inline constexpr double kPartitionTieTol = 1e-9;

/// Default certification tolerance. Solves run at 1e-12 so there are two
/// orders of slack between solve and certify.
inline constexpr double kCertifyTol = 1e-8;

struct GameInstance {
    std::vector<CostFunction> costs;  // length J >= 2
    double budget = 0.0;              // G > 0, cost units
    int inspectors = 0;               // K, 0 <= K < J

    int booths() const { return static_cast<int>(costs.size()); }

    /// Throws std::invalid_argument on J < 2, G <= 0 or K outside [0, J).
    void validate() const;
};

/// Per-booth Gaussian vote-differential parameters.
struct BoothStatistics {
    double mu = 0.0;          // mean vote differential
    double sigma = 1.0;       // > 0
    double weight = 1.0;      // parliamentary weight, >= 0
    double population = 1.0;  // > 0, used by the synthetic cost generator
};

/// Index partition of a stuffing vector: A = argmax entries, B = strictly
/// interior positive entries, C = zeros. Indices are 0-based.
struct StructurePartition {
    std::vector<int> A;
    std::vector<int> B;
    std::vector<int> C;
};

struct StructureCertificate {
    bool pass = false;
    double theta = 0.0;            // structure slope at the candidate
    double budget_residual = 0.0;  // sum g_j(z_j) - G
    std::vector<std::string> violations;
};

struct EquilibriumSolution {
    std::vector<double> z;
    StructurePartition partition;
    double theta = 0.0;   // cost units per vote
    double payoff = 0.0;  // sum of the J-K smallest entries of z
};

/// Sum of the J-K smallest entries of z (total minus the K largest).
/// Throws std::invalid_argument unless 0 <= inspectors < z.size().
double payoff(const std::vector<double>& z, int inspectors);

/// Splits indices by value: within tie_tolerance*max(1, max(z)) of the
/// maximum -> A; at most tie_tolerance (absolute) -> C; the rest -> B.
/// Throws std::invalid_argument on an (effectively) all-zero vector.
StructurePartition partition_of(const std::vector<double>& z,
                                double tie_tolerance = kPartitionTieTol);

/// Structure slope theta_z = sum_{j in A} g'_j(z_j) / (|A| - K).
double structure_slope(const GameInstance& instance, const std::vector<double>& z,
                       const StructurePartition& partition);

/// Checks the three optimality conditions for Leader-Opt-Std:
///   1. slope order:  g'_j(z_j) <= theta for j in A,  g'_l(0) >= theta for l in C
///   2. structure slope:  g'_k(z_k) = theta for k in B
///   3. budget equality:  sum g_j(z_j) = G
/// Slope comparisons are taken within tol*theta (the conditions are
/// homogeneous in the marginals), the budget within tol*max(1,G). A candidate
/// whose argmax set has cardinality <= K fails with a cardinality violation
/// (such a vector cannot be optimal).
StructureCertificate verify_structure(const GameInstance& instance,
                                      const std::vector<double>& z,
                                      double tol = kCertifyTol,
                                      double tie_tolerance = kPartitionTieTol);

/// Standard normal CDF.
double normal_cdf(double x);

/// Exact plebiscite win probability Phi((sum mu_j + stuffed_total) / sqrt(sum sigma_j^2)).
/// The vote differentials are independent Gaussians, so their sum is Gaussian
/// and no sampling is involved.
double win_probability_plebiscite(const std::vector<BoothStatistics>& booths,
                                  double stuffed_total);

}  // namespace blotto
