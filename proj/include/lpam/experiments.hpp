#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lpam {

// One experiment = one process = one output directory. Every field mirrors
// a CLI flag; outputs are a pure function of the semantic fields plus the
// master seed (threads and out_dir excluded).
struct ExperimentConfig {
    std::string subcommand;
    std::string model = "lpam";  // lpam | remy | ford | ford-modified | coupled | seed-decomposition
    std::string seed_tree = "planted";
    std::string seed_tree2 = "star4";
    int n = 1000;
    int n_max = 0;
    double delta = 0.0;
    double alpha = 0.5;
    int replicates = 100;
    uint64_t rng = 7;
    int threads = 0;
    std::string out_dir = ".";
    std::string arithmetic = "float";  // exact | float
    std::string tau;                   // decorated tree JSON; empty = default
    bool emit_states = false;
    bool emit_table = false;
    int circles = 100;
    double resolution = 10.0;
    int centers = 64;
    int num_radii = 8;
    double radius_lo = 0.02;
    double radius_hi = 0.2;
    std::string source = "loop";  // dimension fixture: loop | circle | grid
    std::string sampler;          // linebreak: alpha | triple | walk | (empty = space)
    std::string metric_x, metric_y;  // ghdist csv inputs
    bool net_bound = false;
    std::vector<int> ks = {10, 100, 1000};
    std::string suite = "all";
    double budget_seconds = 1e18;
};

// Semantic fields in a stable key=value line (excludes out_dir/threads).
std::string config_summary(const ExperimentConfig& config);
uint64_t config_hash(const ExperimentConfig& config);

// Exit codes: 0 success, 1 usage error, 2 guard violation, 3 verification
// failure.
int run_experiment(const ExperimentConfig& config);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace lpam
