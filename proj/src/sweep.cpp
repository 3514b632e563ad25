#include "blotto/sweep.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "blotto/solver_general.hpp"
#include "blotto/solver_monotone.hpp"

namespace blotto {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

std::vector<SweepRow> run_sweep(const InstanceFile& file, const SweepRequest& request) {
    if (request.g_grid.empty() || request.k_list.empty())
        throw std::invalid_argument("run_sweep: empty grid");

    std::vector<double> grid(request.g_grid);
    std::sort(grid.begin(), grid.end());
    std::vector<int> ks(request.k_list);
    std::sort(ks.begin(), ks.end());

    for (double g : grid)
        if (!(g > 0.0)) throw std::invalid_argument("run_sweep: budgets must be > 0");
    for (int k : ks)
        if (k < 0 || k >= static_cast<int>(file.booths.size()))
            throw std::invalid_argument("run_sweep: inspector counts must satisfy 0 <= K < J");

    // Method choice is a property of the cost family, not of the row: probe
    // once at the largest budget.
    GameInstance probe = file.to_game();
    probe.budget = grid.back();
    probe.inspectors = ks.front();
    const bool monotone =
        assert_monotone_family(probe.costs, default_probe_grid(probe)).pass;

    const bool has_stats = file.all_stats();
    std::vector<BoothStatistics> stats;
    if (has_stats) stats = file.stats();

    struct Cell {
        SweepRow row;
        std::string error;
    };
    const int total = static_cast<int>(grid.size() * ks.size());
    std::vector<Cell> cells(total);

#pragma omp parallel for schedule(dynamic) if (request.parallel)
    for (int idx = 0; idx < total; ++idx) {
        const int ki = idx / static_cast<int>(grid.size());
        const int gi = idx % static_cast<int>(grid.size());
        Cell& cell = cells[idx];
        try {
            GameInstance inst = file.to_game();
            inst.budget = grid[gi];
            inst.inspectors = ks[ki];
            EquilibriumSolution sol;
            if (monotone) {
                try {
                    sol = solve_monotone(inst);
                } catch (const std::logic_error&) {
                    // Ordering held on the probe grid but not for this row.
                    sol = solve_general(inst);
                }
            } else {
                sol = solve_general(inst);
            }
            const auto cert = verify_structure(inst, sol.z, request.tol);
            if (!cert.pass) {
                cell.error = "certification failed";
                for (const auto& v : cert.violations) cell.error += " [" + v + "]";
                continue;
            }
            cell.row.budget = grid[gi];
            cell.row.inspectors = ks[ki];
            cell.row.z = sol.z;
            cell.row.theta = sol.theta;
            cell.row.payoff = sol.payoff;
            cell.row.size_a = static_cast<int>(sol.partition.A.size());
            if (has_stats) cell.row.win_prob = win_probability_plebiscite(stats, sol.payoff);
        } catch (const std::exception& e) {
            cell.error = e.what();
        }
    }

    std::vector<SweepRow> rows;
    rows.reserve(total);
    for (int idx = 0; idx < total; ++idx) {
        if (!cells[idx].error.empty()) {
            const int ki = idx / static_cast<int>(grid.size());
            const int gi = idx % static_cast<int>(grid.size());
            throw std::runtime_error("sweep row G=" + fmt(grid[gi]) + " K=" +
                                     std::to_string(ks[ki]) + " failed: " + cells[idx].error);
        }
        rows.push_back(std::move(cells[idx].row));
    }
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows, int booths) {
    std::string out = "G,K";
    for (int i = 1; i <= booths; ++i) out += ",z" + std::to_string(i);
    out += ",theta,U,sizeA,win_prob\n";
    for (const auto& row : rows) {
        out += fmt(row.budget) + "," + std::to_string(row.inspectors);
        for (double v : row.z) out += "," + fmt(v);
        out += "," + fmt(row.theta) + "," + fmt(row.payoff) + "," + std::to_string(row.size_a);
        out += ",";
        if (row.win_prob) out += fmt(*row.win_prob);
        out += "\n";
    }
    return out;
}

}  // namespace blotto
