#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

#include "blotto/instance_io.hpp"
#include "blotto/sweep.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(BLOTTO_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult result;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) result.out.append(buf.data(), n);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

fs::path write_file(const std::string& name, const std::string& body) {
    const fs::path dir = fs::temp_directory_path() / "blotto_cli_tests";
    fs::create_directories(dir);
    const fs::path path = dir / name;
    std::ofstream out(path, std::ios::binary);
    out << body;
    return path;
}

const char* kWorkedInstance = R"({
  "booths": [
    {"cost": {"type": "power", "coef": 1, "exp": 2},
     "stats": {"mu": -1.0, "sigma": 2.0, "weight": 1, "population": 100}},
    {"cost": {"type": "power", "coef": 1, "exp": 2},
     "stats": {"mu": 0.5, "sigma": 1.0, "weight": 1, "population": 100}},
    {"cost": {"type": "power", "coef": 4, "exp": 2},
     "stats": {"mu": 0.0, "sigma": 1.5, "weight": 1, "population": 100}}
  ],
  "budget": 3,
  "inspectors": 1
})";

}  // namespace

TEST_CASE("solve emits the certified plan as JSON") {
    const auto path = write_file("worked.json", kWorkedInstance);
    const auto result = run("solve " + path.string());
    REQUIRE(result.exit_code == 0);
    const json doc = json::parse(result.out);
    CHECK(doc["method"] == "monotone");
    CHECK(doc["z"][0].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(doc["z"][2].get<double>() == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(doc["theta"].get<double>() == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(doc["U"].get<double>() == doctest::Approx(1.5).epsilon(1e-9));
    CHECK(doc["expected_surviving"].get<double>() == doctest::Approx(1.5).epsilon(1e-9));
    CHECK(doc["certificate"]["pass"] == true);
    CHECK(doc["partition"]["A"] == json::array({1, 2}));
}

TEST_CASE("malformed input exits 2 and names the offending field") {
    const auto path = write_file("bad_budget.json", R"({
      "booths": [{"cost": {"type": "power", "coef": 1, "exp": 2}},
                 {"cost": {"type": "power", "coef": 1, "exp": 2}}],
      "budget": -5,
      "inspectors": 0
    })");
    const std::string cmd =
        std::string(BLOTTO_CLI_PATH) + " solve " + path.string() + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    const int status = pclose(pipe);
    CHECK(WEXITSTATUS(status) == 2);
    CHECK(out.find("budget") != std::string::npos);
}

TEST_CASE("equilibrium emits marginals and a consistent subset distribution") {
    const auto path = write_file("worked.json", kWorkedInstance);
    const auto result = run("equilibrium " + path.string());
    REQUIRE(result.exit_code == 0);
    const json doc = json::parse(result.out);
    CHECK(doc["marginals"][0]["p"].get<double>() == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(doc["marginals"][1]["p"].get<double>() == doctest::Approx(0.5).epsilon(1e-9));
    REQUIRE(doc["q_support"].size() == 2);
    CHECK(doc["q_support"][0]["subset"] == json::array({1}));
    CHECK(doc["q_support"][0]["prob"].get<double>() == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(doc["nash"]["pass"] == true);
}

TEST_CASE("equilibrium without inspectors prints no marginals") {
    const auto path = write_file("k0.json", R"({
      "booths": [{"cost": {"type": "power", "coef": 1, "exp": 2}},
                 {"cost": {"type": "power", "coef": 4, "exp": 2}}],
      "budget": 5,
      "inspectors": 0
    })");
    const auto result = run("equilibrium " + path.string());
    REQUIRE(result.exit_code == 0);
    const json doc = json::parse(result.out);
    CHECK(doc["marginals"].empty());
    REQUIRE(doc["q_support"].size() == 1);
    CHECK(doc["q_support"][0]["subset"].empty());
    CHECK(doc["q_support"][0]["prob"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("sample is deterministic per seed") {
    const auto path = write_file("worked.json", kWorkedInstance);
    const auto a = run("sample " + path.string() + " --seed 11 --draws 20");
    const auto b = run("sample " + path.string() + " --seed 11 --draws 20");
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
    const auto c = run("sample " + path.string() + " --seed 12 --draws 20");
    CHECK(a.out != c.out);  // different seed, different draw sequence
    const json doc = json::parse(a.out);
    CHECK(doc["draws"].size() == 20);
}

TEST_CASE("sweep emits the documented CSV header, sorted rows") {
    const auto path = write_file("worked.json", kWorkedInstance);
    const auto result = run("sweep " + path.string() + " --g-grid 9,1,3 --k-list 1,0");
    REQUIRE(result.exit_code == 0);
    std::istringstream lines(result.out);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "G,K,z1,z2,z3,theta,U,sizeA,win_prob");
    std::vector<std::pair<int, double>> order;
    std::string line;
    while (std::getline(lines, line)) {
        double g;
        int k;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%d", &g, &k) == 2);
        order.emplace_back(k, g);
        CHECK(line.back() != ',');  // win_prob present (instance has stats)
    }
    REQUIRE(order.size() == 6);
    CHECK(std::is_sorted(order.begin(), order.end()));
}

TEST_CASE("generate is byte-deterministic per seed") {
    const auto a = run("generate --booths 51 --seed 7 --budget 10000 --inspectors 2");
    const auto b = run("generate --booths 51 --seed 7 --budget 10000 --inspectors 2");
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
    const json doc = json::parse(a.out);
    REQUIRE(doc["booths"].size() == 51);
    for (const auto& booth : doc["booths"]) {
        CHECK(booth["cost"]["type"] == "power");
        CHECK(booth["cost"]["coef"].get<double>() > 0.0);
    }

    // The generated file round-trips through solve.
    const auto path = write_file("synth.json", a.out);
    const auto solved = run("solve " + path.string());
    REQUIRE(solved.exit_code == 0);
    CHECK(json::parse(solved.out)["certificate"]["pass"] == true);
}

TEST_CASE("parliamentary reports the relaxed plan and win probabilities") {
    const auto path = write_file("worked.json", kWorkedInstance);
    const auto result = run("parliamentary " + path.string() + " --seed 13");
    REQUIRE(result.exit_code == 0);
    const json doc = json::parse(result.out);
    REQUIRE(doc["z"].size() == 3);
    CHECK(doc["budget_spent"].get<double>() == doctest::Approx(3.0).epsilon(1e-8));
    CHECK(doc["win_prob_no_inspection"]["method"] == "exact_dp");
    CHECK(doc["win_prob_no_inspection"]["value"].get<double>() > 0.0);
    CHECK(doc["win_prob_under_inspection"]["value"].get<double>() <=
          doc["win_prob_no_inspection"]["value"].get<double>() + 1e-12);
}

TEST_CASE("parallel sweep equals the serial reference byte for byte") {
    blotto::SyntheticConfig config;
    config.booths = 16;
    config.seed = 3;
    const auto file = blotto::generate_synthetic(config);

    blotto::SweepRequest request;
    for (int i = 1; i <= 24; ++i) request.g_grid.push_back(config.budget * i);
    request.k_list = {0, 2, 5};

    request.parallel = false;
    const auto serial = blotto::sweep_csv(blotto::run_sweep(file, request), config.booths);
    request.parallel = true;
    const auto parallel = blotto::sweep_csv(blotto::run_sweep(file, request), config.booths);
    CHECK(serial == parallel);
    CHECK(serial.find("G,K,z1") == 0);
}

TEST_CASE("parse errors name the offending path") {
    const auto path = write_file("bad_coef.json", R"({
      "booths": [{"cost": {"type": "power", "coef": 1, "exp": 2}},
                 {"cost": {"type": "power", "coef": -3, "exp": 2}}],
      "budget": 1,
      "inspectors": 0
    })");
    const std::string cmd =
        std::string(BLOTTO_CLI_PATH) + " solve " + path.string() + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    CHECK(WEXITSTATUS(pclose(pipe)) == 2);
    CHECK(out.find("booths[1].cost.coef") != std::string::npos);
}

TEST_CASE("win_prob column stays empty without stats") {
    const auto path = write_file("no_stats.json", R"({
      "booths": [{"cost": {"type": "power", "coef": 1, "exp": 2}},
                 {"cost": {"type": "power", "coef": 4, "exp": 2}}],
      "budget": 5,
      "inspectors": 0
    })");
    const auto result = run("sweep " + path.string() + " --g-grid 1,5");
    REQUIRE(result.exit_code == 0);
    std::istringstream lines(result.out);
    std::string line;
    std::getline(lines, line);  // header
    while (std::getline(lines, line)) CHECK(line.back() == ',');
}

TEST_CASE("forcing the wrong solver fails loudly with exit 3") {
    // Marginals 4z^3 and 10z cross inside the budget bracket, so the ordered
    // search certifies only under --method general / auto.
    const auto path = write_file("crossing.json", R"({
      "booths": [{"cost": {"type": "power", "coef": 1, "exp": 4}},
                 {"cost": {"type": "power", "coef": 5, "exp": 2}}],
      "budget": 100,
      "inspectors": 0
    })");
    const auto forced = run("solve " + path.string() + " --method monotone");
    CHECK(forced.exit_code == 3);

    const auto auto_pick = run("solve " + path.string());
    REQUIRE(auto_pick.exit_code == 0);
    const json doc = json::parse(auto_pick.out);
    CHECK(doc["method"] == "general");
    CHECK(doc["certificate"]["pass"] == true);
}

TEST_CASE("synthetic K sweep: win probability falls as inspectors grow") {
    const auto gen = run("generate --booths 51 --seed 7");
    REQUIRE(gen.exit_code == 0);
    const auto path = write_file("fig4.json", gen.out);
    const auto result =
        run("sweep " + path.string() + " --g-grid 0.0002 --k-list 0,1,2,3,4,5,6,7,8,9,10");
    REQUIRE(result.exit_code == 0);
    std::istringstream lines(result.out);
    std::string line;
    std::getline(lines, line);  // header
    double prev = 2.0;
    int rows = 0;
    while (std::getline(lines, line)) {
        const auto pos = line.find_last_of(',');
        const double win_prob = std::stod(line.substr(pos + 1));
        CHECK(win_prob > 0.0);
        CHECK(win_prob < 1.0);
        CHECK(win_prob <= prev + 1e-12);
        prev = win_prob;
        ++rows;
    }
    CHECK(rows == 11);
}

TEST_CASE("every command is byte-reproducible") {
    const auto path = write_file("worked.json", kWorkedInstance);
    const std::vector<std::string> commands = {
        "solve " + path.string(),
        "solve " + path.string() + " --method general",
        "equilibrium " + path.string(),
        "sample " + path.string() + " --seed 3 --draws 5",
        "sweep " + path.string() + " --g-grid 0.5:8:7 --k-list 0,1,2",
        "parliamentary " + path.string() + " --seed 5",
        "generate --booths 12 --seed 9",
    };
    for (const auto& cmd : commands) {
        const auto a = run(cmd);
        const auto b = run(cmd);
        CHECK(a.exit_code == 0);
        CHECK(a.out == b.out);
        CHECK_FALSE(a.out.empty());
    }
}
