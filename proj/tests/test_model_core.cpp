#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "blotto/cost_function.hpp"
#include "blotto/model.hpp"
#include "blotto/solver_general.hpp"
#include "test_support.hpp"

using namespace blotto;

namespace {

GameInstance worked_instance() {
    GameInstance inst;
    inst.costs = {CostFunction::power(1, 2), CostFunction::power(1, 2),
                  CostFunction::power(4, 2)};
    inst.budget = 3.0;
    inst.inspectors = 1;
    return inst;
}

}  // namespace

TEST_CASE("payoff drops the K largest entries") {
    CHECK(payoff({3, 1, 2}, 1) == doctest::Approx(3.0));
    CHECK(payoff({1, 1, 1}, 0) == doctest::Approx(3.0));
    CHECK(payoff({5, 5, 5, 2}, 2) == doctest::Approx(7.0));
    CHECK_THROWS_AS(payoff({1, 2}, 2), std::invalid_argument);
    CHECK_THROWS_AS(payoff({1, 2}, -1), std::invalid_argument);
}

TEST_CASE("payoff complements the sum of the K largest") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 200; ++trial) {
        const int j = 2 + static_cast<int>(testsupport::uniform01(rng) * 9);
        std::vector<double> z(j);
        double total = 0.0;
        for (double& v : z) {
            v = testsupport::uniform(rng, 0.0, 10.0);
            total += v;
        }
        const int k = static_cast<int>(testsupport::uniform01(rng) * j);
        std::vector<double> sorted(z);
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        double top = 0.0;
        for (int i = 0; i < k; ++i) top += sorted[i];
        CHECK(payoff(z, k) + top == doctest::Approx(total).epsilon(1e-12));
    }
}

TEST_CASE("payoff is concave in z") {
    std::mt19937_64 rng(202);
    for (int trial = 0; trial < 200; ++trial) {
        const int j = 2 + static_cast<int>(testsupport::uniform01(rng) * 9);
        std::vector<double> z1(j), z2(j), mix(j);
        for (int i = 0; i < j; ++i) {
            z1[i] = testsupport::uniform(rng, 0.0, 5.0);
            z2[i] = testsupport::uniform(rng, 0.0, 5.0);
        }
        const double lambda = testsupport::uniform01(rng);
        for (int i = 0; i < j; ++i) mix[i] = lambda * z1[i] + (1 - lambda) * z2[i];
        const int k = static_cast<int>(testsupport::uniform01(rng) * j);
        CHECK(payoff(mix, k) >= lambda * payoff(z1, k) + (1 - lambda) * payoff(z2, k) - 1e-12);
    }
}

TEST_CASE("partition assigns ties to A and zeros to C") {
    const auto p1 = partition_of({1.0, 1.0, 0.5}, 1e-9);
    CHECK(p1.A == std::vector<int>{0, 1});
    CHECK(p1.B == std::vector<int>{2});
    CHECK(p1.C.empty());

    const auto p2 = partition_of({2.0, 0.0, 2.0}, 1e-9);
    CHECK(p2.A == std::vector<int>{0, 2});
    CHECK(p2.B.empty());
    CHECK(p2.C == std::vector<int>{1});

    const auto p3 = partition_of({1.0, 1.0 - 1e-12, 0.3}, 1e-9);
    CHECK(p3.A == std::vector<int>{0, 1});
    CHECK(p3.B == std::vector<int>{2});

    CHECK_THROWS_AS(partition_of({0.0, 0.0}, 1e-9), std::invalid_argument);
}

TEST_CASE("verify_structure certifies the worked instance") {
    const auto inst = worked_instance();
    const auto cert = verify_structure(inst, {1.0, 1.0, 0.5});
    CHECK(cert.pass);
    CHECK(cert.theta == doctest::Approx(4.0));

    // Cross-check against the enumeration oracle.
    const auto oracle = oracle_solve(inst);
    CHECK(oracle.z[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(oracle.z[1] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(oracle.z[2] == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("verify_structure rejects a singleton argmax with K=1") {
    const auto cert = verify_structure(worked_instance(), {1.1, 0.9, 0.5});
    CHECK_FALSE(cert.pass);
    REQUIRE(cert.violations.size() >= 1);
    CHECK(cert.violations.front().find("cardinality") != std::string::npos);
}

TEST_CASE("verify_structure passes the symmetric waterfill") {
    GameInstance inst;
    inst.costs = {CostFunction::power(1, 2), CostFunction::power(1, 2)};
    inst.budget = 2.0;
    inst.inspectors = 0;
    const auto cert = verify_structure(inst, {1.0, 1.0});
    CHECK(cert.pass);
    CHECK(cert.theta == doctest::Approx(2.0));
}

TEST_CASE("verification is scale-consistent for a common exponent") {
    std::mt19937_64 rng(303);
    for (int trial = 0; trial < 40; ++trial) {
        auto inst = testsupport::random_monotone_instance(rng, 8);
        const auto sol = oracle_solve(inst);
        REQUIRE(verify_structure(inst, sol.z).pass);

        const double c = testsupport::uniform(rng, 0.3, 4.0);
        const double p = inst.costs[0].exponent();
        GameInstance scaled = inst;
        scaled.budget = std::pow(c, p) * inst.budget;
        std::vector<double> z(sol.z);
        for (double& v : z) v *= c;
        CHECK(verify_structure(scaled, z, 1e-7).pass);
    }
}

TEST_CASE("plebiscite win probability is the Gaussian tail in closed form") {
    CHECK(win_probability_plebiscite({{0, 1, 1, 1}, {0, 1, 1, 1}}, 0.0) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(win_probability_plebiscite({{-3, 1, 1, 1}, {1, 1, 1, 1}}, 2.0) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(win_probability_plebiscite({{-2, 2, 1, 1}}, 4.0) ==
          doctest::Approx(0.8413447460685429).epsilon(1e-9));
    CHECK_THROWS_AS(win_probability_plebiscite({}, 0.0), std::invalid_argument);
}

TEST_CASE("plebiscite win probability is increasing and permutation-invariant") {
    std::mt19937_64 rng(404);
    std::vector<BoothStatistics> booths;
    for (int i = 0; i < 6; ++i)
        booths.push_back({testsupport::uniform(rng, -5, 5), testsupport::uniform(rng, 0.5, 3),
                          1.0, 1.0});
    double prev = 0.0;
    for (double stuffed = 0.0; stuffed <= 10.0; stuffed += 0.5) {
        const double w = win_probability_plebiscite(booths, stuffed);
        if (stuffed > 0.0) CHECK(w > prev);
        prev = w;
    }
    auto shuffled = booths;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(win_probability_plebiscite(shuffled, 3.25) ==
          doctest::Approx(win_probability_plebiscite(booths, 3.25)).epsilon(1e-14));
}

TEST_CASE("cost evaluators satisfy the inverse round trip") {
    std::vector<CostFunction> costs = {
        CostFunction::power(2.5, 3.0),
        CostFunction::power(0.7, 1.5),
        CostFunction::scaled_quadratic(4.0),
        // No closed-form inverse: exercises the bisection fallback.
        CostFunction::custom(
            "poly", [](double z) { return z * z + 0.25 * z * z * z * z; },
            [](double z) { return 2 * z + z * z * z; }),
    };
    std::mt19937_64 rng(505);
    for (const auto& g : costs) {
        CHECK(g.value(0.0) == doctest::Approx(0.0));
        for (int trial = 0; trial < 50; ++trial) {
            const double s = testsupport::uniform(rng, 1e-6, 50.0);
            const double z = g.inverse_derivative(s);
            CHECK(std::abs(g.derivative(z) - s) <= 1e-10 * std::max(1.0, s));
        }
        CHECK(g.inverse_derivative(0.0) == 0.0);
    }
    CHECK_THROWS_AS(CostFunction::power(-1.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(CostFunction::power(1.0, 1.0), std::invalid_argument);
}

TEST_CASE("instance validation") {
    GameInstance inst = worked_instance();
    CHECK_NOTHROW(inst.validate());
    inst.inspectors = 3;
    CHECK_THROWS_AS(inst.validate(), std::invalid_argument);
    inst.inspectors = 1;
    inst.budget = 0.0;
    CHECK_THROWS_AS(inst.validate(), std::invalid_argument);
}
