#include "lpam/experiments.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Growth, looptree, and scaling-limit experiments for preferential attachment trees"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a key=value file");

    lpam::ExperimentConfig cfg;
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--rng", cfg.rng, "Master seed; replicate streams derive from it");
        sub->add_option("--threads", cfg.threads, "Worker threads (0 = LPAM_THREADS or hardware)");
        sub->add_option("--out", cfg.out_dir, "Output directory");
    };

    auto* grow = app.add_subcommand("grow", "Run one growth chain and dump the trajectory");
    grow->add_option("--model", cfg.model,
                     "lpam | remy | ford | ford-modified | coupled | seed-decomposition");
    grow->add_option("--seed-tree", cfg.seed_tree, "pathK, starK, planted, or a parenthesis word");
    grow->add_option("--n", cfg.n, "Target size (vertices; final index for edge-split models)");
    grow->add_option("--delta", cfg.delta, "Affine attachment weight offset (> -1)");
    grow->add_option("--alpha", cfg.alpha, "Edge-weight parameter for the ford models");
    grow->add_flag("--states", cfg.emit_states, "Also write every intermediate state");
    add_common(grow);

    auto* looptree = app.add_subcommand("looptree", "Looptree of a (grown) tree plus metric rows");
    looptree->add_option("--seed-tree", cfg.seed_tree, "Input tree");
    looptree->add_option("--n", cfg.n, "Grow the seed to this size first (0 = as given)");
    looptree->add_option("--delta", cfg.delta, "Growth weight offset when growing");
    looptree->add_option("--centers", cfg.centers, "Number of BFS centers for metric rows");
    add_common(looptree);

    auto* observe = app.add_subcommand("observe", "Decorated-tree observables along growth");
    observe->add_option("--tau", cfg.tau, "Decorated tree JSON, or edge11 / star4deg");
    observe->add_option("--seed-tree", cfg.seed_tree, "Growth seed");
    observe->add_option("--n", cfg.n, "Final size");
    observe->add_option("--n-max", cfg.n_max, "Coefficient table depth (default n)");
    observe->add_option("--delta", cfg.delta, "Growth weight offset");
    observe->add_option("--reps", cfg.replicates, "Replicates");
    observe->add_option("--arithmetic", cfg.arithmetic, "exact | float");
    observe->add_flag("--table", cfg.emit_table, "Only export the coefficient table CSV");
    add_common(observe);

    auto* discriminate = app.add_subcommand("discriminate", "Martingale TV lower bound for two seeds");
    discriminate->add_option("--s1", cfg.seed_tree, "First seed");
    discriminate->add_option("--s2", cfg.seed_tree2, "Second seed");
    discriminate->add_option("--n", cfg.n, "Final size");
    discriminate->add_option("--reps", cfg.replicates, "Replicates per seed");
    discriminate->add_option("--tau", cfg.tau, "Witness decorated tree (default: larger seed, degree labels)");
    add_common(discriminate);

    auto* exact_tv = app.add_subcommand("exact-tv", "Exact TV distance between two seeded chains");
    exact_tv->add_option("--s1", cfg.seed_tree, "First seed");
    exact_tv->add_option("--s2", cfg.seed_tree2, "Second seed");
    exact_tv->add_option("--n-max", cfg.n_max, "Largest size (guarded)");
    add_common(exact_tv);

    auto* ghdist = app.add_subcommand("ghdist", "Gromov-Hausdorff tools");
    ghdist->add_option("--x", cfg.metric_x, "Metric space CSV");
    ghdist->add_option("--y", cfg.metric_y, "Metric space CSV");
    ghdist->add_flag("--net-bound", cfg.net_bound, "Partial-gluing Hausdorff vs net radius experiment");
    ghdist->add_option("--n", cfg.n, "Split steps for --net-bound");
    ghdist->add_option("--ks", cfg.ks, "Mark counts for --net-bound")->delimiter(',');
    add_common(ghdist);

    auto* dimension = app.add_subcommand("dimension", "Ball-volume dimension estimate");
    dimension->add_option("--source", cfg.source, "loop | circle | grid");
    dimension->add_option("--n", cfg.n, "Growth size (loop) or fixture size");
    dimension->add_option("--delta", cfg.delta, "Growth weight offset for loop");
    dimension->add_option("--centers", cfg.centers, "Sampled centers");
    dimension->add_option("--num-radii", cfg.num_radii, "Radii count");
    dimension->add_option("--radius-lo", cfg.radius_lo, "Lower radius as a fraction of the diameter");
    dimension->add_option("--radius-hi", cfg.radius_hi, "Upper radius as a fraction of the diameter");
    add_common(dimension);

    auto* linebreak = app.add_subcommand("linebreak", "Line-breaking space and related samplers");
    linebreak->add_option("--circles", cfg.circles, "Number of circles");
    linebreak->add_option("--resolution", cfg.resolution, "Grid points per unit length");
    linebreak->add_option("--sampler", cfg.sampler, "alpha | triple | walk (omit for the space itself)");
    linebreak->add_option("--n", cfg.n, "Sample count for --sampler");
    add_common(linebreak);

    auto* verify = app.add_subcommand("verify", "Run the acceptance criteria");
    verify->add_option("--suite", cfg.suite, "exact | statistical | all");
    verify->add_option("--budget", cfg.budget_seconds, "Time budget in seconds");
    add_common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    cfg.subcommand = app.get_subcommands().front()->get_name();
    return lpam::run_experiment(cfg);
}
