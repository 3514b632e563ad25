#include "blotto/instance_io.hpp"

#include <fstream>
#include <random>

#include "blotto/rng.hpp"

namespace blotto {

namespace {

using nlohmann::json;

double require_number(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key)) throw ParseError(path + "." + key + ": missing");
    if (!obj[key].is_number()) throw ParseError(path + "." + key + ": must be a number");
    return obj[key].get<double>();
}

double optional_number(const json& obj, const std::string& key, double fallback,
                       const std::string& path) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) throw ParseError(path + "." + key + ": must be a number");
    return obj[key].get<double>();
}

CostFunction parse_cost(const json& obj, const std::string& path) {
    if (!obj.is_object()) throw ParseError(path + ": must be an object");
    if (!obj.contains("type")) throw ParseError(path + ".type: missing");
    const std::string type = obj["type"].get<std::string>();
    if (type != "power")
        throw ParseError(path + ".type: unknown cost type '" + type + "' (expected \"power\")");
    const double coef = require_number(obj, "coef", path);
    const double exp = require_number(obj, "exp", path);
    if (!(coef > 0.0)) throw ParseError(path + ".coef: must be > 0");
    if (!(exp > 1.0)) throw ParseError(path + ".exp: must be > 1");
    return CostFunction::power(coef, exp);
}

BoothStatistics parse_stats(const json& obj, const std::string& path) {
    if (!obj.is_object()) throw ParseError(path + ": must be an object");
    BoothStatistics s;
    s.mu = require_number(obj, "mu", path);
    s.sigma = require_number(obj, "sigma", path);
    s.weight = optional_number(obj, "weight", 1.0, path);
    s.population = optional_number(obj, "population", 1.0, path);
    if (!(s.sigma > 0.0)) throw ParseError(path + ".sigma: must be > 0");
    if (s.weight < 0.0) throw ParseError(path + ".weight: must be >= 0");
    if (!(s.population > 0.0)) throw ParseError(path + ".population: must be > 0");
    return s;
}

WinCurve parse_curve(const json& obj, const std::optional<BoothStatistics>& stats,
                     const std::string& path) {
    if (!obj.is_object()) throw ParseError(path + ": must be an object");
    if (!obj.contains("type")) throw ParseError(path + ".type: missing");
    const std::string type = obj["type"].get<std::string>();
    if (type == "exp_saturation") {
        const double cap = require_number(obj, "cap", path);
        const double scale = require_number(obj, "scale", path);
        if (!(cap > 0.0)) throw ParseError(path + ".cap: must be > 0");
        if (!(scale > 0.0)) throw ParseError(path + ".scale: must be > 0");
        return WinCurve::exp_saturation(cap, scale);
    }
    if (type == "gaussian_gain") {
        // mu/sigma may be spelled out or taken from the booth's stats.
        double mu, sigma;
        if (obj.contains("mu") || obj.contains("sigma")) {
            mu = require_number(obj, "mu", path);
            sigma = require_number(obj, "sigma", path);
        } else if (stats) {
            mu = stats->mu;
            sigma = stats->sigma;
        } else {
            throw ParseError(path + ": gaussian_gain needs mu/sigma or booth stats");
        }
        if (!(sigma > 0.0)) throw ParseError(path + ".sigma: must be > 0");
        return WinCurve::gaussian_gain(mu, sigma);
    }
    throw ParseError(path + ".type: unknown win curve type '" + type + "'");
}

}  // namespace

GameInstance InstanceFile::to_game() const {
    GameInstance game;
    for (const auto& b : booths) game.costs.push_back(b.cost);
    game.budget = budget;
    game.inspectors = inspectors;
    game.validate();
    return game;
}

bool InstanceFile::all_stats() const {
    for (const auto& b : booths)
        if (!b.stats) return false;
    return !booths.empty();
}

std::vector<BoothStatistics> InstanceFile::stats() const {
    std::vector<BoothStatistics> out;
    for (size_t i = 0; i < booths.size(); ++i) {
        if (!booths[i].stats)
            throw ParseError("booths[" + std::to_string(i) + "].stats: missing");
        out.push_back(*booths[i].stats);
    }
    return out;
}

InstanceFile parse_instance(const json& doc) {
    if (!doc.is_object()) throw ParseError("instance: top level must be an object");
    InstanceFile file;

    if (!doc.contains("booths") || !doc["booths"].is_array())
        throw ParseError("booths: missing or not an array");
    const auto& arr = doc["booths"];
    if (arr.size() < 2) throw ParseError("booths: at least 2 booths required");

    for (size_t i = 0; i < arr.size(); ++i) {
        const std::string path = "booths[" + std::to_string(i) + "]";
        const auto& b = arr[i];
        if (!b.is_object()) throw ParseError(path + ": must be an object");
        BoothSpec spec;
        if (!b.contains("cost")) throw ParseError(path + ".cost: missing");
        spec.cost = parse_cost(b["cost"], path + ".cost");
        if (b.contains("stats")) spec.stats = parse_stats(b["stats"], path + ".stats");
        if (b.contains("win_curve"))
            spec.curve = parse_curve(b["win_curve"], spec.stats, path + ".win_curve");
        file.booths.push_back(std::move(spec));
    }

    file.budget = require_number(doc, "budget", "instance");
    if (!(file.budget > 0.0)) throw ParseError("budget: must be > 0");
    if (!doc.contains("inspectors")) throw ParseError("inspectors: missing");
    if (!doc["inspectors"].is_number_integer()) throw ParseError("inspectors: must be an integer");
    file.inspectors = doc["inspectors"].get<int>();
    if (file.inspectors < 0) throw ParseError("inspectors: must be >= 0");
    if (file.inspectors >= static_cast<int>(file.booths.size()))
        throw ParseError("inspectors: must be < number of booths");
    return file;
}

InstanceFile load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open instance file: " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError("instance is not valid JSON: " + std::string(e.what()));
    }
    return parse_instance(doc);
}

nlohmann::ordered_json to_json(const InstanceFile& file) {
    nlohmann::ordered_json doc;
    doc["booths"] = nlohmann::ordered_json::array();
    for (const auto& b : file.booths) {
        nlohmann::ordered_json booth;
        booth["cost"] = {{"type", "power"}, {"coef", b.cost.coef()}, {"exp", b.cost.exponent()}};
        if (b.stats) {
            booth["stats"] = {{"mu", b.stats->mu},
                              {"sigma", b.stats->sigma},
                              {"weight", b.stats->weight},
                              {"population", b.stats->population}};
        }
        doc["booths"].push_back(std::move(booth));
    }
    doc["budget"] = file.budget;
    doc["inspectors"] = file.inspectors;
    return doc;
}

InstanceFile generate_synthetic(const SyntheticConfig& config) {
    if (config.booths < 2)
        throw std::invalid_argument("generate_synthetic: at least 2 booths required");
    if (config.cost_model != "variance-population")
        throw std::invalid_argument("generate_synthetic: unknown cost model '" +
                                    config.cost_model + "'");

    std::mt19937_64 rng(config.seed);
    InstanceFile file;
    file.budget = config.budget;
    file.inspectors = config.inspectors;
    for (int i = 0; i < config.booths; ++i) {
        BoothStatistics s;
        s.mu = detail::uniform(rng, config.mu_lo, config.mu_hi);
        s.sigma = detail::uniform(rng, config.sigma_lo, config.sigma_hi);
        s.population = detail::uniform(rng, config.pop_lo, config.pop_hi);
        s.weight = 1.0;
        BoothSpec spec;
        spec.stats = s;
        spec.cost = CostFunction::power(1.0 / (s.sigma * s.sigma * s.population), 2.0);
        file.booths.push_back(std::move(spec));
    }
    return file;
}

}  // namespace blotto
