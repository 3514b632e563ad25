#include "blotto/parliamentary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "blotto/rng.hpp"
#include "blotto/rootfind.hpp"

namespace blotto {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double normal_pdf(double x) {
    static const double inv_sqrt_2pi = 0.3989422804014326779;
    return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

}  // namespace

WinCurve WinCurve::identity() {
    WinCurve f;
    f.kind_ = "identity";
    f.value_ = [](double z) { return z; };
    f.derivative_ = [](double) { return 1.0; };
    f.inverse_ = [](double w) { return w; };
    f.max_gain_ = kInf;
    return f;
}

WinCurve WinCurve::exp_saturation(double cap, double scale) {
    if (!(cap > 0.0) || !(scale > 0.0))
        throw std::invalid_argument("exp_saturation: cap and scale must be > 0");
    WinCurve f;
    f.kind_ = "exp_saturation";
    f.value_ = [cap, scale](double z) { return cap * (1.0 - std::exp(-z / scale)); };
    f.derivative_ = [cap, scale](double z) { return cap / scale * std::exp(-z / scale); };
    f.inverse_ = [cap, scale](double w) { return -scale * std::log1p(-w / cap); };
    f.max_gain_ = cap;
    return f;
}

WinCurve WinCurve::gaussian_gain(double mu, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_gain: sigma must be > 0");
    const double base = normal_cdf(mu / sigma);
    auto raw = [mu, sigma, base](double z) { return normal_cdf((mu + z) / sigma) - base; };
    auto raw_d = [mu, sigma](double z) { return normal_pdf((mu + z) / sigma) / sigma; };

    WinCurve f;
    f.kind_ = "gaussian_gain";
    f.max_gain_ = 1.0 - base;

    if (mu >= 0.0) {
        f.value_ = raw;
        f.derivative_ = raw_d;
        return f;
    }

    // Convex below the inflection z0 = -mu. Replace [0, z_t] by the tangent
    // line through the origin: f(z_t) = z_t f'(z_t), which exists uniquely in
    // (z0, inf) because psi(z) = z f'(z) - f(z) is positive at z0, strictly
    // decreasing there (psi' = z f'' < 0) and tends to -max_gain.
    const double z0 = -mu;
    auto neg_psi = [&](double z) { return raw(z) - z * raw_d(z); };
    const double hi = detail::expand_upper(neg_psi, 0.0, 2.0 * z0 + sigma);
    const double z_t = detail::bisect_increasing(neg_psi, 0.0, z0, hi, 1e-13);
    const double slope = raw_d(z_t);

    f.linearized_ = true;
    f.value_ = [raw, z_t, slope](double z) { return z < z_t ? slope * z : raw(z); };
    f.derivative_ = [raw_d, z_t, slope](double z) { return z < z_t ? slope : raw_d(z); };
    return f;
}

WinCurve WinCurve::custom(std::string kind, std::function<double(double)> value,
                          std::function<double(double)> derivative,
                          std::function<double(double)> inverse, double max_gain) {
    if (!value || !derivative)
        throw std::invalid_argument("WinCurve::custom: value and derivative required");
    WinCurve f;
    f.kind_ = std::move(kind);
    f.value_ = std::move(value);
    f.derivative_ = std::move(derivative);
    f.inverse_ = std::move(inverse);
    f.max_gain_ = max_gain;
    return f;
}

double WinCurve::inverse(double w) const {
    if (w < 0.0) throw std::invalid_argument("WinCurve::inverse: negative gain");
    if (w == 0.0) return 0.0;
    if (w >= max_gain_)
        throw std::invalid_argument("WinCurve::inverse: gain beyond the curve's range");
    if (inverse_) return inverse_(w);
    auto v = [this](double z) { return value_(z); };
    const double hi = detail::expand_upper(v, w, 1.0);
    return detail::bisect_increasing(v, w, 0.0, hi, 1e-13);
}

TransformedInstance transform_parliamentary(const std::vector<CostFunction>& costs,
                                            const std::vector<WinCurve>& curves,
                                            double budget, int inspectors) {
    if (costs.size() != curves.size())
        throw std::invalid_argument("transform_parliamentary: costs/curves length mismatch");
    if (!(budget > 0.0)) throw std::invalid_argument("transform_parliamentary: budget must be > 0");

    TransformedInstance out;
    out.curves = curves;
    out.game.budget = budget;
    out.game.inspectors = inspectors;

    for (size_t i = 0; i < costs.size(); ++i) {
        const auto& f = curves[i];
        const auto& g = costs[i];

        if (std::abs(f.value(0.0)) > 1e-12)
            throw std::invalid_argument("transform_parliamentary: curve " +
                                        std::to_string(i + 1) + " has f(0) != 0");
        // Probe the concave increasing contract on the budget-reachable range.
        auto cost_value = [&g](double z) { return g.value(z); };
        const double z_cap = detail::bisect_increasing(
            cost_value, budget, 0.0, detail::expand_upper(cost_value, budget, 1.0), 1e-9);
        double prev = kInf;
        for (int t = 0; t < 64; ++t) {
            const double z = z_cap * std::pow(1e-6, 1.0 - t / 63.0);
            const double d = f.derivative(z);
            if (!(d > 0.0))
                throw std::invalid_argument("transform_parliamentary: curve " +
                                            std::to_string(i + 1) +
                                            " is not strictly increasing");
            if (d > prev * (1.0 + 1e-9) + 1e-12)
                throw std::invalid_argument("transform_parliamentary: curve " +
                                            std::to_string(i + 1) +
                                            " is not concave on the probe grid");
            prev = d;
        }

        // g_hat(w) = g(f^{-1}(w)). The inverse derivative is solved in
        // z-space where the bracket is unbounded: g'(z)/f'(z) is increasing,
        // so bisection applies; then w = f(z).
        auto value = [g, f](double w) { return g.value(f.inverse(w)); };
        auto deriv = [g, f](double w) {
            const double z = f.inverse(w);
            return g.derivative(z) / f.derivative(z);
        };
        auto inv_deriv = [g, f](double s) {
            auto ratio = [&](double z) { return g.derivative(z) / f.derivative(z); };
            const double hi = detail::expand_upper(ratio, s, 1.0);
            return f.value(detail::bisect_increasing(ratio, s, 0.0, hi, 1e-13));
        };
        out.game.costs.push_back(CostFunction::custom(
            "transformed(" + g.kind() + ")", value, deriv, inv_deriv, f.max_gain()));
    }
    out.game.validate();
    return out;
}

std::vector<double> map_back(const TransformedInstance& transformed,
                             const std::vector<double>& w) {
    std::vector<double> z(w.size());
    for (size_t i = 0; i < w.size(); ++i) z[i] = transformed.curves[i].inverse(w[i]);
    return z;
}

double poisson_binomial_tail_above_half(const std::vector<double>& win_probs) {
    const int n = static_cast<int>(win_probs.size());
    if (n == 0) throw std::invalid_argument("poisson_binomial: empty probability list");
    std::vector<double> dp(n + 1, 0.0);
    dp[0] = 1.0;
    for (int j = 0; j < n; ++j) {
        const double r = win_probs[j];
        for (int c = j + 1; c >= 1; --c) dp[c] = dp[c] * (1.0 - r) + dp[c - 1] * r;
        dp[0] *= (1.0 - r);
    }
    double tail = 0.0;
    for (int c = n; 2 * c > n; --c) tail += dp[c];
    return tail;
}

namespace {

constexpr long kBlockDraws = 8192;

// Number of majority wins within one deterministic substream block.
long block_wins(const std::vector<double>& win_probs, const std::vector<double>& weights,
                double half_weight, long draws, std::uint64_t block_seed) {
    std::mt19937_64 rng(block_seed);
    const int n = static_cast<int>(win_probs.size());
    long wins = 0;
    for (long d = 0; d < draws; ++d) {
        double w = 0.0;
        for (int j = 0; j < n; ++j)
            if (detail::uniform01(rng) < win_probs[j]) w += weights[j];
        if (w > half_weight) ++wins;
    }
    return wins;
}

}  // namespace

double weighted_majority_monte_carlo_serial(const std::vector<double>& win_probs,
                                            const std::vector<double>& weights,
                                            long draws, std::uint64_t seed) {
    if (win_probs.size() != weights.size())
        throw std::invalid_argument("monte_carlo: probs/weights length mismatch");
    if (draws <= 0) throw std::invalid_argument("monte_carlo: draws must be > 0");
    double total_weight = 0.0;
    for (double w : weights) total_weight += w;
    const double half = 0.5 * total_weight;

    const long blocks = (draws + kBlockDraws - 1) / kBlockDraws;
    long wins = 0;
    for (long b = 0; b < blocks; ++b) {
        const long in_block = std::min(kBlockDraws, draws - b * kBlockDraws);
        wins += block_wins(win_probs, weights, half, in_block,
                           detail::substream_seed(seed, static_cast<std::uint64_t>(b)));
    }
    return static_cast<double>(wins) / static_cast<double>(draws);
}

double weighted_majority_monte_carlo(const std::vector<double>& win_probs,
                                     const std::vector<double>& weights, long draws,
                                     std::uint64_t seed) {
    if (win_probs.size() != weights.size())
        throw std::invalid_argument("monte_carlo: probs/weights length mismatch");
    if (draws <= 0) throw std::invalid_argument("monte_carlo: draws must be > 0");
    double total_weight = 0.0;
    for (double w : weights) total_weight += w;
    const double half = 0.5 * total_weight;

    const long blocks = (draws + kBlockDraws - 1) / kBlockDraws;
    long wins = 0;
#pragma omp parallel for schedule(static) reduction(+ : wins)
    for (long b = 0; b < blocks; ++b) {
        const long in_block = std::min(kBlockDraws, draws - b * kBlockDraws);
        wins += block_wins(win_probs, weights, half, in_block,
                           detail::substream_seed(seed, static_cast<std::uint64_t>(b)));
    }
    return static_cast<double>(wins) / static_cast<double>(draws);
}

TailProbability win_probability_parliamentary(const std::vector<BoothStatistics>& booths,
                                              const std::vector<double>& z,
                                              const std::vector<int>& inspected,
                                              std::uint64_t seed, long draws) {
    const int n = static_cast<int>(booths.size());
    if (n == 0) throw std::invalid_argument("win_probability_parliamentary: no booths");
    if (static_cast<int>(z.size()) != n)
        throw std::invalid_argument("win_probability_parliamentary: z length mismatch");

    std::vector<bool> y(n, false);
    for (int i : inspected) {
        if (i < 0 || i >= n)
            throw std::invalid_argument("win_probability_parliamentary: bad inspected index");
        y[i] = true;
    }

    std::vector<double> r(n), weights(n);
    for (int i = 0; i < n; ++i) {
        if (!(booths[i].sigma > 0.0))
            throw std::invalid_argument("win_probability_parliamentary: sigma must be > 0");
        const double stuffed = y[i] ? 0.0 : z[i];
        r[i] = normal_cdf((booths[i].mu + stuffed) / booths[i].sigma);
        weights[i] = booths[i].weight;
    }

    bool equal_weights = true;
    for (int i = 1; i < n; ++i)
        equal_weights = equal_weights &&
                        std::abs(weights[i] - weights[0]) <= 1e-12 * std::max(1.0, weights[0]);

    TailProbability out;
    if (equal_weights) {
        out.method = "exact_dp";
        out.value = weights[0] > 0.0 ? poisson_binomial_tail_above_half(r) : 0.0;
        return out;
    }
    out.method = "monte_carlo";
    out.draws = draws;
    out.value = weighted_majority_monte_carlo(r, weights, draws, seed);
    out.std_error = std::sqrt(std::max(0.0, out.value * (1.0 - out.value)) /
                              static_cast<double>(draws));
    return out;
}

}  // namespace blotto
