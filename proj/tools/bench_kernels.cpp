// Compares the serial reference kernels against their OpenMP versions:
// the weighted Monte Carlo majority estimator and the sweep harness.
// Results must agree exactly; timings show the parallel speedup.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "blotto/instance_io.hpp"
#include "blotto/parliamentary.hpp"
#include "blotto/rng.hpp"
#include "blotto/sweep.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("openmp: disabled at build time\n");
#endif

    // Monte Carlo majority tail, 51 booths with uneven weights.
    std::mt19937_64 rng(7);
    std::vector<double> probs(51), weights(51);
    for (int i = 0; i < 51; ++i) {
        probs[i] = 0.2 + 0.6 * blotto::detail::uniform01(rng);
        weights[i] = 1.0 + 54.0 * blotto::detail::uniform01(rng);
    }
    const long draws = 2'000'000;

    auto t0 = std::chrono::steady_clock::now();
    const double serial =
        blotto::weighted_majority_monte_carlo_serial(probs, weights, draws, 42);
    const double t_serial = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const double parallel = blotto::weighted_majority_monte_carlo(probs, weights, draws, 42);
    const double t_parallel = seconds_since(t0);

    std::printf("monte_carlo  draws=%ld  serial=%.3fs  parallel=%.3fs  speedup=%.2fx  %s\n",
                draws, t_serial, t_parallel, t_serial / t_parallel,
                serial == parallel ? "identical" : "MISMATCH");

    // Sweep over a budget grid.
    blotto::SyntheticConfig config;
    config.booths = 24;
    config.seed = 11;
    const auto file = blotto::generate_synthetic(config);

    blotto::SweepRequest request;
    for (int i = 1; i <= 96; ++i) request.g_grid.push_back(250.0 * i);
    request.k_list = {0, 2, 5, 8};

    request.parallel = false;
    t0 = std::chrono::steady_clock::now();
    const auto rows_serial = blotto::run_sweep(file, request);
    const double t_sweep_serial = seconds_since(t0);

    request.parallel = true;
    t0 = std::chrono::steady_clock::now();
    const auto rows_parallel = blotto::run_sweep(file, request);
    const double t_sweep_parallel = seconds_since(t0);

    const std::string csv_serial = blotto::sweep_csv(rows_serial, config.booths);
    const std::string csv_parallel = blotto::sweep_csv(rows_parallel, config.booths);
    std::printf("sweep        rows=%zu   serial=%.3fs  parallel=%.3fs  speedup=%.2fx  %s\n",
                rows_serial.size(), t_sweep_serial, t_sweep_parallel,
                t_sweep_serial / t_sweep_parallel,
                csv_serial == csv_parallel ? "identical" : "MISMATCH");

    return (serial == parallel && csv_serial == csv_parallel) ? 0 : 1;
}
