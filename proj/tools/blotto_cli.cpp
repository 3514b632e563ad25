// Command-line front end: solve instances, emit the inspector's mixed
// strategy, sample inspections, sweep budget/inspector grids to CSV,
// run the parliamentary reduction, and generate synthetic instances.
//
// Exit codes: 0 success, 2 input error, 3 numeric/certification failure.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "blotto/equilibrium.hpp"
#include "blotto/instance_io.hpp"
#include "blotto/parliamentary.hpp"
#include "blotto/rng.hpp"
#include "blotto/solver_general.hpp"
#include "blotto/solver_monotone.hpp"
#include "blotto/sweep.hpp"

namespace {

using blotto::InstanceFile;
using ordered_json = nlohmann::ordered_json;

std::vector<int> ids_1based(const std::vector<int>& zero_based) {
    std::vector<int> out;
    out.reserve(zero_based.size());
    for (int i : zero_based) out.push_back(i + 1);
    return out;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("BLOTTO_SEED")) return std::strtoull(env, nullptr, 10);
    return 0;
}

// "1,2.5,10" or "lo:hi:count" (inclusive linspace).
std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        double lo, hi;
        int count;
        if (std::sscanf(text.c_str(), "%lf:%lf:%d", &lo, &hi, &count) != 3 || count < 1)
            throw blotto::ParseError("--g-grid: expected lo:hi:count");
        for (int i = 0; i < count; ++i)
            out.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
        return out;
    }
    size_t pos = 0;
    while (pos < text.size()) {
        size_t next = text.find(',', pos);
        if (next == std::string::npos) next = text.size();
        out.push_back(std::stod(text.substr(pos, next - pos)));
        pos = next + 1;
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (double v : parse_grid(text)) out.push_back(static_cast<int>(v));
    return out;
}

struct SolveOutput {
    blotto::EquilibriumSolution solution;
    blotto::StructureCertificate certificate;
    std::string method;
};

SolveOutput run_solver(const blotto::GameInstance& instance, const std::string& method,
                       double tol) {
    SolveOutput out;
    if (method == "monotone") {
        out.method = "monotone";
        out.solution = blotto::solve_monotone(instance);
    } else if (method == "general") {
        out.method = "general";
        out.solution = blotto::solve_general(instance);
    } else {
        const auto report = blotto::assert_monotone_family(
            instance.costs, blotto::default_probe_grid(instance));
        if (report.pass) {
            try {
                out.method = "monotone";
                out.solution = blotto::solve_monotone(instance);
            } catch (const std::logic_error&) {
                // Marginals can cross between probe points; the certificate
                // catches that and the general solver takes over.
                out.method = "general";
                out.solution = blotto::solve_general(instance);
            }
        } else {
            out.method = "general";
            out.solution = blotto::solve_general(instance);
        }
    }
    out.certificate = blotto::verify_structure(instance, out.solution.z, tol);
    if (!out.certificate.pass) {
        std::string what = "solution failed certification:";
        for (const auto& v : out.certificate.violations) what += " [" + v + "]";
        throw std::runtime_error(what);
    }
    return out;
}

ordered_json solution_json(const SolveOutput& out, const blotto::GameInstance& instance) {
    const auto marginals = blotto::equilibrium_marginals(out.solution, instance);
    ordered_json doc;
    doc["method"] = out.method;
    doc["z"] = out.solution.z;
    doc["theta"] = out.solution.theta;
    doc["U"] = out.solution.payoff;
    doc["expected_surviving"] = blotto::expected_surviving(out.solution.z, marginals);
    doc["partition"] = {{"A", ids_1based(out.solution.partition.A)},
                        {"B", ids_1based(out.solution.partition.B)},
                        {"C", ids_1based(out.solution.partition.C)}};
    doc["certificate"] = {{"pass", out.certificate.pass},
                          {"violations", out.certificate.violations}};
    return doc;
}

ordered_json subset_distribution_json(const blotto::SubsetDistribution& dist) {
    ordered_json arr = ordered_json::array();
    for (const auto& [subset, mass] : dist.support)
        arr.push_back({{"subset", ids_1based(subset)}, {"prob", mass}});
    return arr;
}

void write_output(const std::string& out_path, const std::string& payload) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write output file: " + out_path);
    out << payload;
}

int cmd_solve(const std::string& path, const std::string& method, double tol) {
    const InstanceFile file = blotto::load_instance(path);
    const auto instance = file.to_game();
    const SolveOutput out = run_solver(instance, method, tol);
    std::cout << solution_json(out, instance).dump(2) << "\n";
    return 0;
}

int cmd_equilibrium(const std::string& path, double tol) {
    const InstanceFile file = blotto::load_instance(path);
    const auto instance = file.to_game();
    const SolveOutput out = run_solver(instance, "auto", tol);
    const auto marginals = blotto::equilibrium_marginals(out.solution, instance);
    const auto dist = blotto::decompose_marginals(marginals, instance.inspectors);
    const auto nash = blotto::verify_nash(instance, out.solution, marginals, tol);
    if (!nash.pass) {
        std::string what = "equilibrium verification failed:";
        for (const auto& f : nash.failures) what += " [" + f + "]";
        throw std::runtime_error(what);
    }

    ordered_json doc = solution_json(out, instance);
    ordered_json p = ordered_json::array();
    for (size_t i = 0; i < marginals.booths.size(); ++i) {
        // A zero marginal means the booth is never inspected; drop it from
        // the listing (K=0 prints no marginals at all).
        if (marginals.p[i] > 0.0)
            p.push_back({{"booth", marginals.booths[i] + 1}, {"p", marginals.p[i]}});
    }
    doc["marginals"] = p;
    doc["q_support"] = subset_distribution_json(dist);
    doc["nash"] = {{"pass", nash.pass},
                   {"inspector_value", nash.inspector_value},
                   {"expected_payoff", nash.expected_payoff}};
    std::cout << doc.dump(2) << "\n";
    return 0;
}

int cmd_sample(const std::string& path, std::uint64_t seed, int draws, double tol) {
    const InstanceFile file = blotto::load_instance(path);
    const auto instance = file.to_game();
    const SolveOutput out = run_solver(instance, "auto", tol);
    const auto marginals = blotto::equilibrium_marginals(out.solution, instance);
    const auto dist = blotto::decompose_marginals(marginals, instance.inspectors);

    ordered_json doc;
    doc["seed"] = seed;
    doc["q_support"] = subset_distribution_json(dist);
    ordered_json arr = ordered_json::array();
    for (int i = 0; i < draws; ++i)
        arr.push_back(ids_1based(blotto::sample_inspection(dist, seed + i)));
    doc["draws"] = arr;
    std::cout << doc.dump(2) << "\n";
    return 0;
}

int cmd_sweep(const std::string& path, const std::string& g_grid, const std::string& k_list,
              const std::string& out_path, double tol) {
    const InstanceFile file = blotto::load_instance(path);
    blotto::SweepRequest request;
    request.g_grid = parse_grid(g_grid);
    request.k_list = k_list.empty() ? std::vector<int>{file.inspectors}
                                    : parse_int_list(k_list);
    request.tol = tol;
    const auto rows = blotto::run_sweep(file, request);
    write_output(out_path, blotto::sweep_csv(rows, static_cast<int>(file.booths.size())));
    return 0;
}

int cmd_parliamentary(const std::string& path, std::uint64_t seed, long draws, double tol) {
    const InstanceFile file = blotto::load_instance(path);

    std::vector<blotto::CostFunction> costs;
    std::vector<blotto::WinCurve> curves;
    for (size_t i = 0; i < file.booths.size(); ++i) {
        const auto& booth = file.booths[i];
        costs.push_back(booth.cost);
        if (booth.curve) {
            curves.push_back(*booth.curve);
        } else if (booth.stats) {
            curves.push_back(blotto::WinCurve::gaussian_gain(booth.stats->mu, booth.stats->sigma));
        } else {
            throw blotto::ParseError("booths[" + std::to_string(i) +
                                     "]: parliamentary run needs win_curve or stats");
        }
    }

    const auto transformed =
        blotto::transform_parliamentary(costs, curves, file.budget, file.inspectors);
    const auto sol = blotto::solve_general(transformed.game);
    const auto cert = blotto::verify_structure(transformed.game, sol.z, tol);
    if (!cert.pass) throw std::runtime_error("transformed solution failed certification");
    const auto z = blotto::map_back(transformed, sol.z);

    double spent = 0.0;
    for (size_t i = 0; i < costs.size(); ++i) spent += costs[i].value(z[i]);

    ordered_json doc;
    doc["w"] = sol.z;
    doc["z"] = z;
    doc["relaxed_objective"] = sol.payoff;  // expected booths won via surviving gains
    doc["theta_w"] = sol.theta;
    doc["budget_spent"] = spent;
    ordered_json linearized = ordered_json::array();
    for (size_t i = 0; i < curves.size(); ++i)
        if (curves[i].linearized()) linearized.push_back(static_cast<int>(i) + 1);
    doc["linearized_booths"] = linearized;

    if (file.all_stats()) {
        const auto stats = file.stats();
        const auto no_inspection =
            blotto::win_probability_parliamentary(stats, z, {}, seed, draws);
        doc["win_prob_no_inspection"] = {{"value", no_inspection.value},
                                         {"std_error", no_inspection.std_error},
                                         {"method", no_inspection.method},
                                         {"draws", no_inspection.draws}};
        // Mixture over the equilibrium inspection distribution of the
        // transformed game.
        const auto marginals = blotto::equilibrium_marginals(sol, transformed.game);
        const auto dist = blotto::decompose_marginals(marginals, file.inspectors);
        double mix = 0.0, mix_se = 0.0;
        ordered_json terms = ordered_json::array();
        for (size_t t = 0; t < dist.support.size(); ++t) {
            const auto& [subset, mass] = dist.support[t];
            const auto term = blotto::win_probability_parliamentary(
                stats, z, subset, blotto::detail::substream_seed(seed, t + 1), draws);
            mix += mass * term.value;
            mix_se += mass * mass * term.std_error * term.std_error;
            terms.push_back({{"subset", ids_1based(subset)},
                             {"prob", mass},
                             {"win_prob", term.value}});
        }
        doc["win_prob_under_inspection"] = {{"value", mix},
                                            {"std_error", std::sqrt(mix_se)},
                                            {"terms", terms}};
    }
    std::cout << doc.dump(2) << "\n";
    return 0;
}

int cmd_generate(const blotto::SyntheticConfig& config, const std::string& out_path) {
    const InstanceFile file = blotto::generate_synthetic(config);
    write_output(out_path, blotto::to_json(file).dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ballot-stuffing game solver: optimal stuffing vectors and the "
                 "inspector's mixed equilibrium strategy"};
    app.require_subcommand(1);

    std::string instance_path, method = "auto", g_grid, k_list, out_path;
    double tol = blotto::kCertifyTol;
    std::uint64_t seed = default_seed();
    int draws = 1;
    long mc_draws = 1000000;

    auto* solve = app.add_subcommand("solve", "Solve an instance and print the certified plan");
    solve->add_option("instance", instance_path, "Instance JSON file")->required();
    solve->add_option("--method", method, "auto|monotone|general")
        ->check(CLI::IsMember({"auto", "monotone", "general"}));
    solve->add_option("--tol", tol, "Certification tolerance");

    auto* equilibrium =
        app.add_subcommand("equilibrium", "Solve and print marginals + subset distribution");
    equilibrium->add_option("instance", instance_path)->required();
    equilibrium->add_option("--tol", tol);

    auto* sample = app.add_subcommand("sample", "Draw inspection subsets from the equilibrium");
    sample->add_option("instance", instance_path)->required();
    sample->add_option("--seed", seed)->envname("BLOTTO_SEED");
    sample->add_option("--draws", draws);
    sample->add_option("--tol", tol);

    auto* sweep = app.add_subcommand("sweep", "Solve over a (G, K) grid and emit CSV");
    sweep->add_option("instance", instance_path)->required();
    sweep->add_option("--g-grid", g_grid, "Comma list or lo:hi:count")->required();
    sweep->add_option("--k-list", k_list, "Comma list of inspector counts");
    sweep->add_option("--out", out_path, "Output CSV path (default stdout)");
    sweep->add_option("--tol", tol);

    auto* parliamentary =
        app.add_subcommand("parliamentary", "Reduce to the plebiscite form and solve");
    parliamentary->add_option("instance", instance_path)->required();
    parliamentary->add_option("--seed", seed)->envname("BLOTTO_SEED");
    parliamentary->add_option("--draws", mc_draws, "Monte Carlo draws for weighted tails");
    parliamentary->add_option("--tol", tol);

    blotto::SyntheticConfig config;
    auto* generate = app.add_subcommand("generate", "Emit a seeded synthetic instance");
    generate->add_option("--booths", config.booths);
    generate->add_option("--seed", config.seed)->envname("BLOTTO_SEED");
    generate->add_option("--budget", config.budget);
    generate->add_option("--inspectors", config.inspectors);
    generate->add_option("--mu-lo", config.mu_lo);
    generate->add_option("--mu-hi", config.mu_hi);
    generate->add_option("--sigma-lo", config.sigma_lo);
    generate->add_option("--sigma-hi", config.sigma_hi);
    generate->add_option("--pop-lo", config.pop_lo);
    generate->add_option("--pop-hi", config.pop_hi);
    generate->add_option("--cost-model", config.cost_model)
        ->check(CLI::IsMember({"variance-population"}));
    generate->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (solve->parsed()) return cmd_solve(instance_path, method, tol);
        if (equilibrium->parsed()) return cmd_equilibrium(instance_path, tol);
        if (sample->parsed()) return cmd_sample(instance_path, seed, draws, tol);
        if (sweep->parsed()) return cmd_sweep(instance_path, g_grid, k_list, out_path, tol);
        if (parliamentary->parsed()) return cmd_parliamentary(instance_path, seed, mc_draws, tol);
        if (generate->parsed()) return cmd_generate(config, out_path);
    } catch (const blotto::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
