#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "anisolp/config.hpp"
#include "anisolp/runner.hpp"

using namespace anisolp;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream is(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("config defaults and parsing") {
    const ExperimentConfig def = ExperimentConfig::from_json_text("{}");
    CHECK(def.grid_points == 256);
    CHECK(def.family_seeds == 8);
    CHECK(def.suites.size() == 6);
    CHECK(def.group_exponent(1, 1) == 2.0);

    const ExperimentConfig cfg = ExperimentConfig::from_json_text(R"({
        "group": {"P": [[1.0, 0.0], [0.0, 1.0]]},
        "grid": {"extent": 8.0, "points": 64},
        "family": {"seeds": 4, "eps": 0.25},
        "sweep": {"alphas": [0.5], "ps": [2.0], "betas": [0.0], "weighted_beta": false, "k": 2},
        "suites": ["T1.3"],
        "output_dir": "custom_out",
        "master_seed": 99,
        "threads": 2
    })");
    CHECK(cfg.grid_extent == 8.0);
    CHECK(cfg.family_eps == 0.25);
    CHECK(cfg.suites.size() == 1);
    CHECK(cfg.master_seed == 99);
}

TEST_CASE("config rejects unknown keys and bad ranges") {
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({"grip": {}})"), DomainError);
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({"grid": {"resolution": 3}})"), DomainError);

    // alpha = 5 with tag T1.2 (range (0,2)) is a validation error
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({
        "sweep": {"alphas": [5.0]},
        "suites": ["T1.2"]
    })"),
                    RangeError);

    // inadmissible group
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({"group": {"P": [[0.5, 0], [0, 1]]}})"),
                    AdmissibilityError);

    CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({"suites": ["T9.9"]})"), RangeError);
}

TEST_CASE("sweep runs deterministically and writes byte-identical reports") {
    ExperimentConfig cfg = ExperimentConfig::from_json_text(R"({
        "grid": {"extent": 16.0, "points": 32},
        "family": {"seeds": 2, "eps": 0.125},
        "sweep": {"alphas": [1.0], "ps": [2.0], "betas": [0.0], "weighted_beta": false, "k": 2},
        "suites": ["T1.3"]
    })");
    const auto base = std::filesystem::temp_directory_path() / "anisolp_cli";
    std::filesystem::remove_all(base);

    cfg.output_dir = base / "run1";
    const auto reports1 = run_sweep(cfg);
    cfg.output_dir = base / "run2";
    const auto reports2 = run_sweep(cfg);

    REQUIRE(reports1.size() == reports2.size());
    CHECK(slurp(base / "run1" / "sweep.csv") == slurp(base / "run2" / "sweep.csv"));
    CHECK(slurp(base / "run1" / "sweep_summary.json") == slurp(base / "run2" / "sweep_summary.json"));
    CHECK(!slurp(base / "run1" / "sweep.csv").empty());

    // exit-code wiring
    CHECK(run_subcommand("sweep", cfg) == 0);
    CHECK(run_subcommand("nonsense", cfg) == 2);
}

TEST_CASE("verify battery passes on a light configuration") {
    ExperimentConfig cfg = ExperimentConfig::from_json_text(R"({
        "group": {"P": [[1.0]]},
        "grid": {"extent": 16.0, "points": 256},
        "family": {"seeds": 2, "eps": 0.125},
        "sweep": {"alphas": [0.5]},
        "suites": ["T1.2", "T1.3"]
    })");
    cfg.output_dir = std::filesystem::temp_directory_path() / "anisolp_cli_verify";
    const auto checks = run_verify(cfg);
    for (const auto& c : checks) {
        INFO(c.name, " value=", c.value, " tol=", c.tolerance);
        CHECK(c.passed);
    }
    CHECK(std::filesystem::exists(cfg.output_dir / "verify_summary.json"));
}
