#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "blotto/model.hpp"
#include "blotto/parliamentary.hpp"

namespace blotto {

/// Input/validation error; the message names the offending JSON path.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct BoothSpec {
    CostFunction cost = CostFunction::power(1.0, 2.0);
    std::optional<BoothStatistics> stats;
    std::optional<WinCurve> curve;
};

struct InstanceFile {
    std::vector<BoothSpec> booths;
    double budget = 0.0;
    int inspectors = 0;

    GameInstance to_game() const;
    bool all_stats() const;
    std::vector<BoothStatistics> stats() const;  // throws if any booth lacks stats
};

InstanceFile parse_instance(const nlohmann::json& doc);
InstanceFile load_instance(const std::filesystem::path& path);
nlohmann::ordered_json to_json(const InstanceFile& file);

struct SyntheticConfig {
    int booths = 51;
    std::uint64_t seed = 0;
    // Default ranges keep the z^2/(sigma^2 N) cost scale consistent with the
    // default budget, so demo win probabilities land strictly inside (0, 1)
    // and respond to K instead of saturating.
    double mu_lo = -2000.0, mu_hi = 2000.0;
    double sigma_lo = 1000.0, sigma_hi = 10000.0;
    double pop_lo = 100.0, pop_hi = 10000.0;
    double budget = 0.0002;
    int inspectors = 2;
    std::string cost_model = "variance-population";
};

/// Seeded synthetic instance with costs z^2 / (sigma_i^2 N_i): stuffing is
/// cheaper where the population and the vote variance are larger. Output is
/// deterministic per seed.
InstanceFile generate_synthetic(const SyntheticConfig& config);

}  // namespace blotto
