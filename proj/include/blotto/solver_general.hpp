#pragma once

#include <vector>

#include "blotto/model.hpp"

namespace blotto {

/// Candidate stuffing vector for level parameters (m, theta):
/// z_j = m where the waterfill level (g'_j)^-1(theta) reaches m (set A),
/// z_j = (g'_j)^-1(theta) in (0, m) where g'_j(0) < theta (set B),
/// z_j = 0 otherwise (set C). Membership ties go to A.
std::vector<double> candidate_from_levels(const GameInstance& instance, double m,
                                          double theta);

/// Solves Leader-Opt-Std for arbitrary strictly convex cost families
/// (intersecting marginals allowed). Outer bisection on the common max value
/// m, inner bisection on theta for the structure-slope identity at fixed m;
/// the argmax set is recomputed from (m, theta) at every evaluation. The
/// result is certified by verify_structure; failure after convergence throws
/// std::runtime_error naming the violated condition.
EquilibriumSolution solve_general(const GameInstance& instance);

/// Brute-force reference: enumerates every candidate argmax set A with
/// |A| > K (requires J <= 12), solves the one-dimensional structure-slope +
/// budget system per candidate, keeps everything passing verify_structure and
/// asserts that exactly one distinct certified vector exists. Throws
/// std::runtime_error("oracle-inconsistency...") otherwise.
EquilibriumSolution oracle_solve(const GameInstance& instance);

}  // namespace blotto
