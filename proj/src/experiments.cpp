#include "lpam/experiments.hpp"

#include "lpam/binary_growth.hpp"
#include "lpam/continuum.hpp"
#include "lpam/decorated.hpp"
#include "lpam/exact_dist.hpp"
#include "lpam/growth.hpp"
#include "lpam/looptree.hpp"
#include "lpam/metric.hpp"
#include "lpam/observables.hpp"
#include "lpam/stats.hpp"
#include "lpam/verify.hpp"

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace lpam {

namespace {

std::string header_line(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "# config_hash=" << std::hex << config_hash(cfg) << std::dec << " rng=" << cfg.rng << " "
        << config_summary(cfg);
    return out.str();
}

std::string out_path(const ExperimentConfig& cfg, const std::string& name) {
    std::filesystem::create_directories(cfg.out_dir);
    return (std::filesystem::path(cfg.out_dir) / name).string();
}

std::vector<int> checkpoint_sizes(int lo, int hi) {
    std::vector<int> sizes;
    for (int s = 8; s < hi; s *= 2) {
        if (s >= lo) sizes.push_back(s);
    }
    if (sizes.empty() || sizes.back() != hi) sizes.push_back(hi);
    return sizes;
}

DecoratedTree tau_from_config(const ExperimentConfig& cfg) {
    if (cfg.tau.empty()) return decorated_from_plane(PlaneTree::path(2), {1, 1});
    if (cfg.tau == "edge11") return decorated_from_plane(PlaneTree::path(2), {1, 1});
    if (cfg.tau == "star4deg") {
        const PlaneTree star = PlaneTree::star(4);
        std::vector<int> labels(4);
        for (Vertex v = 0; v < 4; ++v) labels[v] = star.degree(v);
        return decorated_from_plane(star, labels);
    }
    return decorated_from_json(cfg.tau);
}

int run_grow(const ExperimentConfig& cfg) {
    std::ostringstream out;
    nlohmann::json meta;
    meta["config_hash"] = config_hash(cfg);
    meta["rng"] = cfg.rng;
    meta["model"] = cfg.model;
    out << meta.dump() << "\n";
    if (cfg.model == "lpam") {
        const PlaneTree seed = seed_from_name(cfg.seed_tree);
        const GrowthTrajectory traj = grow_lpam(seed, cfg.n, cfg.delta, derive_stream(cfg.rng, 0));
        out << nlohmann::json{{"seed", serialize_tree(seed)}, {"planted", seed.planted()}}.dump() << "\n";
        PlaneTree state = traj.seed;
        for (size_t k = 0; k < traj.choices.size(); ++k) {
            out << nlohmann::json{{"step", k},
                                  {"vertex", traj.choices[k].vertex},
                                  {"slot", traj.choices[k].slot}}
                       .dump()
                << "\n";
            if (cfg.emit_states) {
                state.graft_in_place(traj.choices[k]);
                out << nlohmann::json{{"state", serialize_tree(state)}}.dump() << "\n";
            }
        }
        out << nlohmann::json{{"final", serialize_tree(traj.final_tree)}}.dump() << "\n";
    } else if (cfg.model == "remy" || cfg.model == "ford" || cfg.model == "ford-modified") {
        Rng rng(derive_stream(cfg.rng, 0));
        const auto seq = cfg.model == "remy" ? grow_remy(cfg.n, rng)
                                             : grow_ford(cfg.n, cfg.alpha, cfg.model == "ford-modified", rng);
        const LabeledBinaryTree& fin = seq.back();
        out << nlohmann::json{{"edges", fin.edges}, {"leaves", fin.marked_leaves}}.dump() << "\n";
    } else if (cfg.model == "coupled") {
        Rng rng(derive_stream(cfg.rng, 0));
        const CoupledGrowth growth = grow_coupled(cfg.n, rng);
        out << nlohmann::json{{"final_plane", serialize_tree(growth.plane_states.back())},
                              {"coupling_isomorphic", growth.all_steps_isomorphic}}
                   .dump()
            << "\n";
    } else if (cfg.model == "seed-decomposition") {
        Rng rng(derive_stream(cfg.rng, 0));
        const PlaneTree seed = seed_from_name(cfg.seed_tree);
        const SeedDecomposition sd = grow_via_seed_decomposition(seed, cfg.n, rng);
        nlohmann::json parts = nlohmann::json::array();
        for (const auto& p : sd.parts) parts.push_back(serialize_tree(p));
        out << nlohmann::json{{"tree", serialize_tree(sd.tree)}, {"urn", sd.urn.counts}, {"parts", parts}}
                   .dump()
            << "\n";
    } else {
        throw std::invalid_argument("grow: unknown model " + cfg.model);
    }
    write_text_file(out_path(cfg, "trajectory.jsonl"), out.str());
    return 0;
}

int run_looptree(const ExperimentConfig& cfg) {
    const PlaneTree seed = seed_from_name(cfg.seed_tree);
    const PlaneTree tree =
        cfg.n > seed.size() ? grow_lpam(seed, cfg.n, cfg.delta, derive_stream(cfg.rng, 0)).final_tree : seed;
    const Looptree g = tree.planted() ? loop_planted(tree) : loop(tree);
    write_text_file(out_path(cfg, "looptree.json"), looptree_to_json(g) + "\n");

    std::ostringstream csv;
    csv << header_line(cfg) << "\ncenter,vertex,distance\n";
    const GraphCSR csr = csr_of(g);
    Rng rng(derive_stream(cfg.rng, 1));
    for (int c = 0; c < std::min(cfg.centers, g.num_vertices); ++c) {
        const int center = static_cast<int>(rng.index(g.num_vertices));
        const auto dist = bfs_distances(csr, center);
        for (int v = 0; v < g.num_vertices; ++v) csv << center << "," << v << "," << dist[v] << "\n";
    }
    write_text_file(out_path(cfg, "metric_rows.csv"), csv.str());
    return 0;
}

int run_observe(const ExperimentConfig& cfg) {
    const DecoratedTree tau = tau_from_config(cfg);
    int n_max = cfg.n_max > 0 ? cfg.n_max : cfg.n;
    if (!cfg.emit_table) n_max = std::max(n_max, cfg.n);  // tables must cover every checkpoint
    const ArithmeticMode mode = cfg.arithmetic == "exact" ? ArithmeticMode::Exact : ArithmeticMode::Float64;
    const MartingaleTable table = MartingaleTable::build(tau, n_max, mode);
    if (cfg.emit_table) {
        write_text_file(out_path(cfg, "martingale_table.csv"), header_line(cfg) + "\n" + table.to_csv());
        return 0;
    }
    const PlaneTree seed = seed_from_name(cfg.seed_tree);
    const auto sizes = checkpoint_sizes(seed.size() + 1, cfg.n);
    std::vector<std::vector<double>> dvals(sizes.size(), std::vector<double>(cfg.replicates));
    std::vector<std::vector<double>> mvals(sizes.size(), std::vector<double>(cfg.replicates));
    const int threads = cfg.threads > 0 ? cfg.threads : default_thread_count();
    parallel_for_index(cfg.replicates, threads, [&](size_t r) {
        const GrowthTrajectory traj = grow_lpam(seed, cfg.n, cfg.delta, derive_stream(cfg.rng, 100 + r));
        for (size_t i = 0; i < sizes.size(); ++i) {
            const PlaneTree state = traj.state_at(sizes[i]);
            dvals[i][r] = static_cast<double>(d_tau(tau, state));
            mvals[i][r] = table.value(state);
        }
    });
    std::ostringstream csv;
    csv << header_line(cfg) << "\nn,mean_d,stderr_d,mean_m,stderr_m\n";
    for (size_t i = 0; i < sizes.size(); ++i) {
        MomentAccumulator d, m;
        for (int r = 0; r < cfg.replicates; ++r) {
            d.add(dvals[i][r]);
            m.add(mvals[i][r]);
        }
        csv << sizes[i] << "," << d.mean() << "," << d.stderr_of_mean() << "," << m.mean() << ","
            << m.stderr_of_mean() << "\n";
    }
    write_text_file(out_path(cfg, "observe.csv"), csv.str());
    return 0;
}

int run_discriminate(const ExperimentConfig& cfg) {
    const PlaneTree s1 = seed_from_name(cfg.seed_tree);
    const PlaneTree s2 = seed_from_name(cfg.seed_tree2);
    DecoratedTree tau = cfg.tau.empty()
                            ? [&] {
                                  const PlaneTree& big = s1.size() >= s2.size() ? s1 : s2;
                                  std::vector<int> labels(big.size());
                                  for (Vertex v = 0; v < big.size(); ++v) labels[v] = big.degree(v);
                                  return decorated_from_plane(big, labels);
                              }()
                            : tau_from_config(cfg);
    const MartingaleTable table = MartingaleTable::build(tau, cfg.n, ArithmeticMode::Float64);
    const auto sizes = checkpoint_sizes(std::max(s1.size(), s2.size()) + 1, cfg.n);
    const int threads = cfg.threads > 0 ? cfg.threads : default_thread_count();
    std::vector<std::vector<double>> vals[2];
    for (int s = 0; s < 2; ++s) {
        vals[s].assign(sizes.size(), std::vector<double>(cfg.replicates));
        const PlaneTree& seed = s == 0 ? s1 : s2;
        parallel_for_index(cfg.replicates, threads, [&, s](size_t r) {
            const GrowthTrajectory traj =
                grow_lpam(seed, cfg.n, cfg.delta, derive_stream(cfg.rng, 1000 + s * cfg.replicates + r));
            for (size_t i = 0; i < sizes.size(); ++i) vals[s][i][r] = table.value(traj.state_at(sizes[i]));
        });
    }
    std::ostringstream csv;
    csv << header_line(cfg) << "\nn,mean1,var1,mean2,var2,tv_lb\n";
    for (size_t i = 0; i < sizes.size(); ++i) {
        MomentAccumulator a, b;
        for (int r = 0; r < cfg.replicates; ++r) {
            a.add(vals[0][i][r]);
            b.add(vals[1][i][r]);
        }
        csv << sizes[i] << "," << a.mean() << "," << a.variance() << "," << b.mean() << "," << b.variance()
            << "," << tv_lower_bound(a.mean(), a.variance(), b.mean(), b.variance()) << "\n";
    }
    write_text_file(out_path(cfg, "discriminate.csv"), csv.str());
    return 0;
}

int run_exact_tv(const ExperimentConfig& cfg) {
    const PlaneTree s1 = seed_from_name(cfg.seed_tree);
    const PlaneTree s2 = seed_from_name(cfg.seed_tree2);
    const int n0 = std::max(s1.size(), s2.size());
    const int n_max = cfg.n_max > 0 ? cfg.n_max : n0 + 5;
    const DecoratedTree tau = distinguishing_tau(s1, s2);
    const MartingaleTable table = MartingaleTable::build(tau, n_max, ArithmeticMode::Exact);
    std::ostringstream csv;
    csv << header_line(cfg) << "\nn,d_tv,tv_lb,witness\n";
    for (int n = n0; n <= n_max; ++n) {
        const ExactDistribution l1 = exact_step_distribution(s1, n);
        const ExactDistribution l2 = exact_step_distribution(s2, n);
        const Rat tv = total_variation(l1.mass, l2.mass);
        Rat mean[2], second[2];
        int s = 0;
        for (const ExactDistribution* law : {&l1, &l2}) {
            for (const auto& [code, p] : law->mass) {
                const Rat m = table.value_exact(law->reps.at(code));
                mean[s] += p * m;
                second[s] += p * m * m;
            }
            ++s;
        }
        const Rat lb = tv_lower_bound_exact(mean[0], second[0] - mean[0] * mean[0], mean[1],
                                            second[1] - mean[1] * mean[1]);
        csv << n << "," << rat_to_string(tv) << "," << rat_to_string(lb) << ",\"" << tau.code() << "\"\n";
        if (n == n_max) {
            write_text_file(out_path(cfg, "law_s1.json"), distribution_to_json(l1.mass) + "\n");
            write_text_file(out_path(cfg, "law_s2.json"), distribution_to_json(l2.mass) + "\n");
        }
    }
    write_text_file(out_path(cfg, "exact_tv.csv"), csv.str());
    return 0;
}

int run_ghdist(const ExperimentConfig& cfg) {
    if (cfg.net_bound) {
        Rng rng(derive_stream(cfg.rng, 0));
        BinaryGrower grower(BinaryGrower::Mode::Remy, 0.5);
        for (int s = 0; s < cfg.n; ++s) grower.step(rng);
        const LabeledBinaryTree bt = grower.tree();
        const GluResult glu = glu_with_classes(bt);
        const GraphCSR glu_csr = csr_of(glu.graph);
        Looptree tree_graph;
        tree_graph.num_vertices = bt.num_vertices;
        for (const auto& [u, v] : bt.edges) tree_graph.add_edge(u, v);
        const GraphCSR tree_csr = csr_of(tree_graph);

        std::ostringstream csv;
        csv << header_line(cfg) << "\nk,hausdorff,net_radius,bounded\n";
        for (int k : cfg.ks) {
            std::vector<int> leaves(bt.marked_leaves.begin(), bt.marked_leaves.begin() + k + 1);
            std::vector<int> span_classes;
            {
                const std::vector<Vertex> span_vertices = [&] {
                    // Span via repeated projection walks.
                    const auto adj = bt.adjacency();
                    std::vector<int> parent(bt.num_vertices, -1), order{leaves[0]};
                    std::vector<char> visited(bt.num_vertices, 0), in_span(bt.num_vertices, 0);
                    visited[leaves[0]] = 1;
                    for (size_t i = 0; i < order.size(); ++i) {
                        for (int u : adj[order[i]]) {
                            if (!visited[u]) {
                                visited[u] = 1;
                                parent[u] = order[i];
                                order.push_back(u);
                            }
                        }
                    }
                    in_span[leaves[0]] = 1;
                    for (size_t i = 1; i < leaves.size(); ++i) {
                        int w = leaves[i];
                        while (!in_span[w]) {
                            in_span[w] = 1;
                            w = parent[w];
                        }
                    }
                    std::vector<Vertex> out;
                    for (int v = 0; v < bt.num_vertices; ++v) {
                        if (in_span[v]) out.push_back(v);
                    }
                    return out;
                }();
                for (int v : span_vertices) span_classes.push_back(glu.class_of[v]);
            }
            const auto dist_glu = multi_source_bfs_distances(glu_csr, span_classes);
            const auto dist_tree = multi_source_bfs_distances(tree_csr, leaves);
            const int hausdorff = *std::max_element(dist_glu.begin(), dist_glu.end());
            const int net = *std::max_element(dist_tree.begin(), dist_tree.end());
            csv << k << "," << hausdorff << "," << net << "," << (hausdorff <= 2 * net ? 1 : 0) << "\n";
        }
        write_text_file(out_path(cfg, "net_bound.csv"), csv.str());
        return 0;
    }
    std::ifstream fx(cfg.metric_x), fy(cfg.metric_y);
    if (!fx || !fy) throw std::invalid_argument("ghdist: cannot open metric csv inputs");
    std::stringstream bx, by;
    bx << fx.rdbuf();
    by << fy.rdbuf();
    const FiniteMetricSpace x = FiniteMetricSpace::from_csv(bx.str());
    const FiniteMetricSpace y = FiniteMetricSpace::from_csv(by.str());
    const double exact = gh_exact_small(x, y);
    const double diam_lb = std::abs(x.diameter() - y.diameter()) / 2;
    std::ostringstream csv;
    csv << header_line(cfg) << "\ngh_exact,diameter_lower_bound\n" << exact << "," << diam_lb << "\n";
    write_text_file(out_path(cfg, "ghdist.csv"), csv.str());
    return 0;
}

int run_dimension(const ExperimentConfig& cfg) {
    Looptree g;
    double diam = 0;
    if (cfg.source == "loop") {
        const PlaneTree t =
            grow_lpam(PlaneTree::single_vertex(true), cfg.n, cfg.delta, derive_stream(cfg.rng, 0)).final_tree;
        g = loop(t);
        diam = static_cast<double>(looptree_diameter(t));
    } else if (cfg.source == "circle") {
        g = cycle_graph(cfg.n);
        diam = cfg.n / 2.0;
    } else if (cfg.source == "grid") {
        g = torus_grid_graph(cfg.n);
        diam = cfg.n % 2 == 0 ? cfg.n : cfg.n - 1;
    } else {
        throw std::invalid_argument("dimension: unknown source " + cfg.source);
    }
    std::vector<double> radii(cfg.num_radii);
    for (int i = 0; i < cfg.num_radii; ++i) {
        radii[i] = cfg.radius_lo * diam *
                   std::pow(cfg.radius_hi / cfg.radius_lo, static_cast<double>(i) / (cfg.num_radii - 1));
    }
    Rng rng(derive_stream(cfg.rng, 1));
    const DimensionEstimate est = dimension_estimate(csr_of(g), cfg.centers, radii, rng);
    std::ostringstream profile;
    profile << header_line(cfg) << "\nr,volume\n";
    for (size_t i = 0; i < est.profile.radii.size(); ++i) {
        profile << est.profile.radii[i] << "," << est.profile.mean_volume[i] << "\n";
    }
    write_text_file(out_path(cfg, "profile.csv"), profile.str());
    std::ostringstream slope;
    slope << header_line(cfg) << "\nexperiment,slope,stderr\n"
          << cfg.source << "," << est.slope << "," << est.slope_stderr << "\n";
    write_text_file(out_path(cfg, "slope.csv"), slope.str());
    return 0;
}

int run_linebreak(const ExperimentConfig& cfg) {
    Rng rng(derive_stream(cfg.rng, 0));
    if (cfg.sampler == "alpha" || cfg.sampler == "triple" || cfg.sampler == "walk") {
        std::ostringstream csv;
        csv << header_line(cfg) << "\n";
        if (cfg.sampler == "alpha") {
            csv << "alpha\n";
            for (int i = 0; i < cfg.n; ++i) csv << sample_split_alpha(rng) << "\n";
        } else if (cfg.sampler == "triple") {
            csv << "l1,l2,l3\n";
            for (int i = 0; i < cfg.n; ++i) {
                const auto [a, b, c] = sample_triple_lengths(rng);
                csv << a << "," << b << "," << c << "\n";
            }
        } else {
            csv << "i,value\n";
            const auto walk = mass_walk(cfg.n, rng);
            for (size_t i = 0; i < walk.size(); ++i) csv << i + 1 << "," << walk[i] << "\n";
        }
        write_text_file(out_path(cfg, "samples.csv"), csv.str());
        return 0;
    }
    const CircleChain chain = sample_circle_chain(cfg.circles, rng);
    std::ostringstream csv;
    csv << header_line(cfg) << "\ncircle,length,host,position\n";
    for (size_t j = 0; j < chain.circle_lengths.size(); ++j) {
        csv << j << "," << chain.circle_lengths[j] << "," << chain.attach[j].first << ","
            << chain.attach[j].second << "\n";
    }
    write_text_file(out_path(cfg, "chain.csv"), csv.str());
    std::ostringstream summary;
    summary << header_line(cfg) << "\ndiameter,resolution_error\n";
    double err = 0;
    if (cfg.circles <= 200) {
        const FiniteMetricSpace space = discretize_chain(chain, cfg.resolution, &err);
        write_text_file(out_path(cfg, "metric.csv"), space.to_csv() + "\n");
    }
    summary << chain_diameter(chain) << "," << err << "\n";
    write_text_file(out_path(cfg, "summary.csv"), summary.str());
    return 0;
}

int run_verify(const ExperimentConfig& cfg) {
    VerifyOptions opt;
    opt.suite = cfg.suite;
    opt.budget_seconds = cfg.budget_seconds;
    opt.rng = cfg.rng;
    opt.threads = cfg.threads;
    const auto results = run_verification(opt, std::cout);
    bool complete = true, all_passed = true;
    for (const auto& r : results) {
        complete = complete && r.ran;
        all_passed = all_passed && r.ran && r.passed;
    }
    write_text_file(out_path(cfg, "report.json"), verification_report_json(results, opt, complete));
    return all_passed ? 0 : 3;
}

}  // namespace

std::string config_summary(const ExperimentConfig& c) {
    std::ostringstream s;
    s << "subcommand=" << c.subcommand << " model=" << c.model << " seed=" << c.seed_tree
      << " seed2=" << c.seed_tree2 << " n=" << c.n << " n_max=" << c.n_max << " delta=" << c.delta
      << " alpha=" << c.alpha << " replicates=" << c.replicates << " arithmetic=" << c.arithmetic
      << " tau=" << c.tau << " states=" << c.emit_states << " table=" << c.emit_table
      << " circles=" << c.circles << " resolution=" << c.resolution << " centers=" << c.centers
      << " num_radii=" << c.num_radii << " radius_lo=" << c.radius_lo << " radius_hi=" << c.radius_hi
      << " source=" << c.source << " sampler=" << c.sampler << " net_bound=" << c.net_bound << " ks=";
    for (size_t i = 0; i < c.ks.size(); ++i) s << (i ? "|" : "") << c.ks[i];
    s << " suite=" << c.suite;
    return s.str();
}

uint64_t config_hash(const ExperimentConfig& c) {
    const std::string text = config_summary(c) + " rng=" + std::to_string(c.rng);
    uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

int run_experiment(const ExperimentConfig& cfg) {
    try {
        if (cfg.subcommand == "grow") return run_grow(cfg);
        if (cfg.subcommand == "looptree") return run_looptree(cfg);
        if (cfg.subcommand == "observe") return run_observe(cfg);
        if (cfg.subcommand == "discriminate") return run_discriminate(cfg);
        if (cfg.subcommand == "exact-tv") return run_exact_tv(cfg);
        if (cfg.subcommand == "ghdist") return run_ghdist(cfg);
        if (cfg.subcommand == "dimension") return run_dimension(cfg);
        if (cfg.subcommand == "linebreak") return run_linebreak(cfg);
        if (cfg.subcommand == "verify") return run_verify(cfg);
        std::cerr << "unknown subcommand: " << cfg.subcommand << "\n";
        return 1;
    } catch (const GuardError& e) {
        std::cerr << "guard violation: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace lpam
