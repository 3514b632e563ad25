#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blotto/instance_io.hpp"
#include "blotto/model.hpp"

namespace blotto {

struct SweepRow {
    double budget = 0.0;
    int inspectors = 0;
    std::vector<double> z;
    double theta = 0.0;
    double payoff = 0.0;
    int size_a = 0;
    std::optional<double> win_prob;  // present when the instance carries stats
};

struct SweepRequest {
    std::vector<double> g_grid;
    std::vector<int> k_list;
    double tol = kCertifyTol;
    bool parallel = true;  // rows are independent; output order is fixed either way
};

/// One row per (K, G), sorted by (K, G). Each row is solved with the method
/// an auto dispatch would pick (the error-tag binary search when the cost
/// family is ordered, the general solver otherwise) and certified;
/// win_prob is the plebiscite win probability at the row's surviving total.
/// Rows may be computed concurrently; values are pure functions of the row,
/// so the emitted table does not depend on scheduling.
std::vector<SweepRow> run_sweep(const InstanceFile& file, const SweepRequest& request);

/// CSV with header G,K,z1..zJ,theta,U,sizeA,win_prob (win_prob empty when
/// absent). Byte-deterministic for fixed inputs.
std::string sweep_csv(const std::vector<SweepRow>& rows, int booths);

}  // namespace blotto
