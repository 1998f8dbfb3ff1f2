#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dnoise/errors.hpp"
#include "dnoise/harness.hpp"

using namespace dnoise;
namespace fs = std::filesystem;

namespace {
std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}
}  // namespace

TEST_CASE("experiment defaults") {
    const auto cfg = default_config("elliptic-rate");
    CHECK(cfg.domain == "ball2");
    CHECK(cfg.noise == "white");
    CHECK(cfg.distances.size() == 9);
    CHECK(cfg.distances.front() == 0.5);
    CHECK(cfg.distances.back() == 0.001);

    const auto hs = default_config("elliptic-rate", "halfspace1", "homogeneous");
    CHECK(hs.lambda == 1.0);  // resolvent shift required off the bounded domains

    CHECK_THROWS_AS(default_config("no-such-experiment"), ConfigError);
}

TEST_CASE("config files round trip with strict keys") {
    const fs::path dir = fs::temp_directory_path() / "dnoise-test-cfg";
    fs::create_directories(dir);
    const fs::path good = dir / "good.json";
    {
        std::ofstream out(good);
        out << R"({"experiment": "elliptic-rate", "domain": "interval", "noise": "white",
                   "distances": [0.5, 0.2, 0.1, 0.05], "mc": {"seed": 99}})";
    }
    const auto cfg = load_config(good.string());
    CHECK(cfg.domain == "interval");
    CHECK(cfg.mc.seed == 99);
    CHECK(cfg.distances.size() == 4);

    const fs::path bad = dir / "bad.json";
    {
        std::ofstream out(bad);
        out << R"({"experiment": "elliptic-rate", "domian": "interval"})";
    }
    CHECK_THROWS_WITH_AS(load_config(bad.string()), doctest::Contains("domian"), ConfigError);
    fs::remove_all(dir);
}

TEST_CASE("config validation rejects bad probe grids and unknown combos") {
    auto cfg = default_config("elliptic-rate", "interval", "white");
    cfg.distances = {0.1, 0.2, 0.3, 0.4};
    CHECK_THROWS_AS(validate_config(cfg), ConfigError);

    auto combo = default_config("elliptic-rate", "interval", "white");
    combo.noise = "poisson";
    CHECK_THROWS_WITH_AS(validate_config(combo), doctest::Contains("supported"), ConfigError);
}

TEST_CASE("registry covers the bound lock") {
    CHECK(registry_gaps().empty());
    std::ostringstream os;
    list_experiments(os);
    CHECK(os.str().find("all registered") != std::string::npos);
    CHECK(os.str().find("elliptic-rate") != std::string::npos);
}

TEST_CASE("runs write deterministic csv files") {
    const fs::path dir = fs::temp_directory_path() / "dnoise-test-run";
    fs::remove_all(dir);

    auto cfg = default_config("elliptic-rate", "ball2", "signed-series");
    cfg.distances = {0.5, 0.2, 0.1, 0.05};
    cfg.out_dir = (dir / "a").string();
    const auto res = run_experiment(cfg);
    CHECK(res.pass);
    REQUIRE(fs::exists(res.csv_path));
    const std::string first = slurp(res.csv_path);
    CHECK(first.rfind("experiment,domain,dist,t,value,stderr,bound_rhs,ratio,N,seed", 0) == 0);

    cfg.out_dir = (dir / "b").string();
    const auto res2 = run_experiment(cfg);
    CHECK(slurp(res2.csv_path) == first);
    fs::remove_all(dir);
}
