#include "lpam/experiments.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace lpam;

namespace {
std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}
}  // namespace

TEST_CASE("config hash ignores output location but tracks semantics") {
    ExperimentConfig a;
    a.subcommand = "grow";
    ExperimentConfig b = a;
    b.out_dir = "/tmp/elsewhere";
    b.threads = 4;
    CHECK(config_hash(a) == config_hash(b));
    b.n = a.n + 1;
    CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("identical runs produce identical bytes") {
    const auto base = std::filesystem::temp_directory_path() / "lpam_cli_test";
    std::filesystem::remove_all(base);
    for (const char* dir : {"a", "b"}) {
        ExperimentConfig cfg;
        cfg.subcommand = "grow";
        cfg.model = "lpam";
        cfg.seed_tree = "((()))";
        cfg.n = 64;
        cfg.rng = 7;
        cfg.out_dir = (base / dir).string();
        CHECK(run_experiment(cfg) == 0);
    }
    CHECK(slurp((base / "a" / "trajectory.jsonl").string()) ==
          slurp((base / "b" / "trajectory.jsonl").string()));
    CHECK(!slurp((base / "a" / "trajectory.jsonl").string()).empty());
}

TEST_CASE("exit codes") {
    const auto base = std::filesystem::temp_directory_path() / "lpam_cli_codes";
    ExperimentConfig cfg;
    cfg.subcommand = "exact-tv";
    cfg.seed_tree = "path4";
    cfg.seed_tree2 = "star4";
    cfg.n_max = 30;  // beyond the exact-expansion guard
    cfg.out_dir = base.string();
    CHECK(run_experiment(cfg) == 2);

    cfg.subcommand = "grow";
    cfg.model = "nonsense";
    CHECK(run_experiment(cfg) == 1);

    cfg.subcommand = "definitely-not-a-subcommand";
    CHECK(run_experiment(cfg) == 1);
}

TEST_CASE("experiment outputs carry the config header") {
    const auto base = std::filesystem::temp_directory_path() / "lpam_cli_header";
    std::filesystem::remove_all(base);
    ExperimentConfig cfg;
    cfg.subcommand = "linebreak";
    cfg.sampler = "alpha";
    cfg.n = 100;
    cfg.out_dir = base.string();
    CHECK(run_experiment(cfg) == 0);
    const std::string body = slurp((base / "samples.csv").string());
    CHECK(body.rfind("# config_hash=", 0) == 0);
    CHECK(body.find("rng=7") != std::string::npos);
}

TEST_CASE("exact tv experiment emits exact fractions") {
    const auto base = std::filesystem::temp_directory_path() / "lpam_cli_tv";
    std::filesystem::remove_all(base);
    ExperimentConfig cfg;
    cfg.subcommand = "exact-tv";
    cfg.seed_tree = "path4";
    cfg.seed_tree2 = "star4";
    cfg.n_max = 6;
    cfg.out_dir = base.string();
    CHECK(run_experiment(cfg) == 0);
    const std::string body = slurp((base / "exact_tv.csv").string());
    CHECK(body.find("4,1,1,") != std::string::npos);  // disjoint deterministic start
    CHECK(body.find("/") != std::string::npos);       // rational entries
}
