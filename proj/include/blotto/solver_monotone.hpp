#pragma once

#include <string>
#include <vector>

#include "blotto/model.hpp"

namespace blotto {

/// Diagnostics for the cost-ordering assumption: marginals must satisfy
/// g'_1(z) <= ... <= g'_J(z) for all z and g'_j(0) = 0 for all j.
struct MonotoneFamilyReport {
    bool pass = true;
    int booth_lo = -1;    // 0-based pair that violates the ordering
    int booth_hi = -1;
    double probe = 0.0;   // probe point where the violation was seen
    std::string reason;
};

enum class CalcZStatus { Correct, ErrorP, ErrorQ };

const char* to_string(CalcZStatus s);

/// Candidate stuffing vector for a given |A| plus the error tag telling the
/// binary search which way to move.
struct CalcZResult {
    std::vector<double> z;
    CalcZStatus status = CalcZStatus::Correct;
    double z_a = 0.0;    // common A-value
    double theta = 0.0;  // theta(z_a)
};

struct SolveStats {
    int calc_z_calls = 0;
};

/// 64 log-spaced probe points spanning the budget bracket of `instance`
/// (the for-all-z ordering condition cannot be checked exhaustively, so the
/// family check probes a finite grid; for a common-exponent power family the
/// ordering is checked on coefficients instead and needs no grid).
std::vector<double> default_probe_grid(const GameInstance& instance, int points = 64);

/// Checks the cost-ordering assumption on the probe grid. For power costs
/// with a common exponent the coefficient ordering is checked symbolically.
MonotoneFamilyReport assert_monotone_family(const std::vector<CostFunction>& costs,
                                            const std::vector<double>& probe_grid);

/// One Calc_Z query: solves the budget identity for the common A-value z_a
/// (strictly increasing in z_a, so by bisection), builds the candidate vector
/// (z_a on the first cardA booths, waterfill level (g'_i)^-1(theta) beyond),
/// and classifies it. Condition 1 (z_a >= z_{cardA+1}) is skipped at cardA=J
/// and condition 2 (g'_cardA(z_a) <= theta) at cardA=K+1; boundary equality
/// counts as Correct since the optimality inequalities are non-strict.
CalcZResult calc_z(const GameInstance& instance, int cardA);

/// Binary search on |A| over [K+1, J] driven by the Calc_Z error tags
/// (ErrorP raises the lower bound, ErrorQ lowers the upper bound). Uses at
/// most ceil(log2(J-K)) + 2 Calc_Z queries. The returned vector is certified
/// by verify_structure; a certification failure throws std::logic_error.
EquilibriumSolution solve_monotone(const GameInstance& instance,
                                   SolveStats* stats = nullptr);

}  // namespace blotto
