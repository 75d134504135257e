#include "lpam/verify.hpp"

#include "lpam/binary_growth.hpp"
#include "lpam/continuum.hpp"
#include "lpam/decorated.hpp"
#include "lpam/enumerate.hpp"
#include "lpam/exact_dist.hpp"
#include "lpam/growth.hpp"
#include "lpam/looptree.hpp"
#include "lpam/metric.hpp"
#include "lpam/observables.hpp"
#include "lpam/rng.hpp"
#include "lpam/stats.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace lpam {

namespace {

struct Ctx {
    uint64_t rng = 7;
    int threads = 1;
    int dimension_n = 100000;
    int diameter_n = 100000;
};

std::string fmt(double x, int prec = 4) {
    std::ostringstream s;
    s << std::setprecision(prec) << x;
    return s.str();
}

// ---- C1: one-step recurrence identity ------------------------------------

bool c1_recurrence(const Ctx&, std::string& measured) {
    const DecoratedOrderUniverse universe = enumerate_decorated(4, 4);
    long checks = 0;
    for (const DecoratedTree& tau : universe.elements) {
        const int w = tau.weight();
        if (w < 2) continue;
        const RecurrenceCoeffs rc = recurrence_coeffs(tau);
        for (int n = 2; n <= 7; ++n) {
            const Rat denom = 2 * n - 2;
            for (const auto& [code, T] : enumerate_abstract_trees(n)) {
                const Rat lhs = one_step_expectation(tau, T);
                Rat rhs = (Rat(1) + Rat(w) / denom) * Rat(d_tau(tau, T));
                for (const DecoratedTree& red : rc.reduced) {
                    rhs += rc.linear.at(red.code()) * Rat(d_tau(red, T)) / denom;
                }
                if (lhs != rhs) {
                    measured = "mismatch at tau=" + tau.code() + " T=" + code;
                    return false;
                }
                ++checks;
            }
        }
    }
    measured = std::to_string(checks) + " exact identities";
    return true;
}

// ---- C2: martingale one-step identity ------------------------------------

bool c2_martingale(const Ctx&, std::string& measured) {
    const DecoratedOrderUniverse universe = enumerate_decorated(4, 4);
    long checks = 0;
    for (const DecoratedTree& tau : universe.elements) {
        if (tau.weight() < 2) continue;
        const MartingaleTable table = MartingaleTable::build(tau, 8, ArithmeticMode::Exact);
        for (int n = 2; n <= 7; ++n) {
            const Rat denom = 2 * n - 2;
            for (const auto& [code, T] : enumerate_abstract_trees(n)) {
                const Rat target = table.value_exact(T);
                Rat acc = 0;
                for (Vertex v = 0; v < T.size(); ++v) {
                    PlaneTree grown = T;
                    grown.attach_leaf(v);
                    acc += Rat(T.degree(v)) * table.value_exact(grown) / denom;
                }
                if (acc != target) {
                    measured = "mismatch at tau=" + tau.code() + " T=" + code;
                    return false;
                }
                ++checks;
            }
        }
    }
    measured = std::to_string(checks) + " exact identities";
    return true;
}

// ---- C3: falling factorial identities -------------------------------------

bool c3_falling_factorials(const Ctx&, std::string& measured) {
    const auto big_ff = [](int64_t k, int64_t j) {
        BigInt p = 1;
        for (int64_t i = 0; i < j; ++i) p *= (k - i) > 0 ? BigInt(k - i) : BigInt(0);
        return p;
    };
    long checks = 0;
    for (int64_t d = 1; d <= 20; ++d) {
        for (int64_t l = 1; l <= d; ++l) {
            const BigInt lhs1 = big_ff(d + 1, l);
            const BigInt rhs1 = big_ff(d, l) + l * big_ff(d, l - 1);
            const BigInt lhs2 = d * big_ff(d, l - 1);
            const BigInt rhs2 = big_ff(d, l) + (l - 1) * big_ff(d, l - 1);
            const BigInt lhs3 = d * big_ff(d + 1, l);
            const BigInt rhs3 = big_ff(d, l + 1) + 2 * l * big_ff(d, l) + l * (l - 1) * big_ff(d, l - 1);
            if (lhs1 != rhs1 || lhs2 != rhs2 || lhs3 != rhs3) {
                measured = "failure at d=" + std::to_string(d) + " l=" + std::to_string(l);
                return false;
            }
            // Cross-check the int64 routine wherever it cannot overflow.
            if (big_ff(d, l) == BigInt(falling_factorial(d, l))) ++checks;
        }
    }
    measured = std::to_string(checks) + " (d, l) pairs, three identities each";
    return true;
}

// ---- C4: uniform law of the uniform edge-split chain ----------------------

bool c4_remy_uniform(const Ctx&, std::string& measured) {
    std::ostringstream detail;
    for (int steps = 1; steps <= 4; ++steps) {
        int64_t expect_classes = 1;
        for (int i = 3; i <= 2 * steps - 1; i += 2) expect_classes *= i;
        const BinaryExactLaw law = exact_remy_law(steps);
        if (static_cast<int64_t>(law.states.size()) != expect_classes) {
            measured = "step " + std::to_string(steps) + ": " + std::to_string(law.states.size()) +
                       " classes, expected " + std::to_string(expect_classes);
            return false;
        }
        const Rat uniform(1, expect_classes);
        for (const auto& [code, p] : law.states) {
            if (p != uniform) {
                measured = "step " + std::to_string(steps) + ": non-uniform mass " + rat_to_string(p);
                return false;
            }
        }
        detail << (steps > 1 ? ", " : "") << expect_classes;
    }
    measured = "uniform over " + detail.str() + " shapes after 1..4 splits";
    return true;
}

// ---- C5: coupling, pathwise and in law -------------------------------------

bool c5_coupling(const Ctx& ctx, std::string& measured) {
    constexpr int kRuns = 10000;
    constexpr int kSize = 50;
    std::atomic<long> bad{0};
    parallel_for_index(kRuns, ctx.threads, [&](size_t run) {
        Rng rng(derive_stream(ctx.rng, 5'000'000 + run));
        CoupledGrower grower;
        if (!grower.coupling_isomorphic()) ++bad;
        while (grower.size() < kSize) {
            grower.step(rng);
            if (!grower.coupling_isomorphic()) {
                ++bad;
                break;
            }
        }
    });
    if (bad.load() != 0) {
        measured = std::to_string(bad.load()) + " runs broke the coupling";
        return false;
    }
    for (int n = 1; n <= 4; ++n) {
        const PlaneExactLaw plane = exact_plane_lpam_law(PlaneTree::single_vertex(true), n, Rat(0));
        const auto loop_law = loop_law_from_plane(plane);
        const auto glu_law = glu_law_from_binary(exact_remy_law(n - 1));
        if (loop_law != glu_law) {
            measured = "law mismatch at n=" + std::to_string(n);
            return false;
        }
    }
    measured = std::to_string(kRuns) + " pathwise runs to 50 vertices; exact laws equal for n <= 4";
    return true;
}

// ---- C6: urn decomposition matches direct growth ---------------------------

bool c6_seed_decomposition(const Ctx& ctx, std::string& measured) {
    constexpr int kSamples = 100000;
    const PlaneTree seed = PlaneTree::path(3);
    const ExactDistribution exact = exact_step_distribution(seed, 5);
    std::vector<std::string> codes;
    std::map<std::string, int> code_idx;
    for (const auto& [code, p] : exact.mass) {
        code_idx[code] = static_cast<int>(codes.size());
        codes.push_back(code);
    }
    std::vector<int> sample_class(kSamples, -1);
    std::atomic<long> urn_violations{0};
    parallel_for_index(kSamples, ctx.threads, [&](size_t i) {
        Rng rng(derive_stream(ctx.rng, 6'000'000 + i));
        const SeedDecomposition sd = grow_via_seed_decomposition(seed, 5, rng);
        int64_t total = 0;
        for (int64_t c : sd.urn.counts) {
            total += c;
            if (c % 2 == 0 || c < 1) ++urn_violations;
        }
        if (total != 4 + 2 * 2) ++urn_violations;
        if (sd.tree.size() != 5) ++urn_violations;
        const auto it = code_idx.find(canonical_code(sd.tree));
        if (it != code_idx.end()) sample_class[i] = it->second;
    });
    if (urn_violations.load() != 0) {
        measured = "urn invariant violations: " + std::to_string(urn_violations.load());
        return false;
    }
    std::vector<double> observed(codes.size(), 0.0), expected(codes.size(), 0.0);
    for (int cls : sample_class) {
        if (cls < 0) {
            measured = "sample produced a class outside the exact support";
            return false;
        }
        observed[cls] += 1;
    }
    for (size_t c = 0; c < codes.size(); ++c) expected[c] = to_double(exact.mass.at(codes[c])) * kSamples;
    const double p = chi_square_pvalue(observed, expected);
    measured = "chi-square p=" + fmt(p) + " over " + std::to_string(codes.size()) + " classes";
    return p > 0.001;
}

// ---- C7: seed discrimination ------------------------------------------------

DecoratedTree discrimination_witness() {
    const PlaneTree star = PlaneTree::star(4);
    std::vector<int> labels(4);
    for (Vertex v = 0; v < 4; ++v) labels[v] = star.degree(v);
    return decorated_from_plane(star, labels);
}

bool c7_discrimination(const Ctx& ctx, std::string& measured) {
    const DecoratedTree witness = discrimination_witness();
    const PlaneTree seeds[2] = {PlaneTree::path(4), PlaneTree::star(4)};

    // Exact side: total variation must dominate the moment bound and be
    // nonincreasing in n.
    const MartingaleTable exact_table = MartingaleTable::build(witness, 9, ArithmeticMode::Exact);
    std::vector<ExactDistribution> laws[2];
    for (int s = 0; s < 2; ++s) {
        for (int n = 4; n <= 9; ++n) laws[s].push_back(exact_step_distribution(seeds[s], n));
    }
    Rat prev_tv = 1;
    std::ostringstream exact_detail;
    for (int n = 4; n <= 9; ++n) {
        const int idx = n - 4;
        const Rat tv = total_variation(laws[0][idx].mass, laws[1][idx].mass);
        Rat mean[2], second[2];
        for (int s = 0; s < 2; ++s) {
            for (const auto& [code, p] : laws[s][idx].mass) {
                const Rat m = exact_table.value_exact(laws[s][idx].reps.at(code));
                mean[s] += p * m;
                second[s] += p * m * m;
            }
        }
        const Rat bound = tv_lower_bound_exact(mean[0], second[0] - mean[0] * mean[0], mean[1],
                                               second[1] - mean[1] * mean[1]);
        if (tv > prev_tv) {
            measured = "exact TV increased at n=" + std::to_string(n);
            return false;
        }
        if (tv < bound) {
            measured = "exact TV below the moment bound at n=" + std::to_string(n);
            return false;
        }
        prev_tv = tv;
        if (n == 9) exact_detail << "exact: tv(9)=" << fmt(to_double(tv)) << " >= bound " << fmt(to_double(bound));
    }

    // Monte Carlo side at n = 500 and n = 1000, for the stated witness and,
    // as a diagnostic, for the minimal distinguishing tree (single vertex
    // labeled 2). The stated witness decides the verdict.
    constexpr int kReps = 100000;
    const auto mc_bounds = [&](const DecoratedTree& tau, uint64_t salt, double out[2]) {
        const MartingaleTable table = MartingaleTable::build(tau, 1000, ArithmeticMode::Float64);
        std::vector<double> v500[2], v1000[2];
        for (int s = 0; s < 2; ++s) {
            v500[s].assign(kReps, 0.0);
            v1000[s].assign(kReps, 0.0);
            const PlaneTree& seed = seeds[s];
            parallel_for_index(kReps, ctx.threads, [&, s](size_t r) {
                Rng rng(derive_stream(ctx.rng, salt + s * 1'000'000 + r));
                const PlaneTree mid = grow_lpam_tree(seed, 500, 0.0, rng);
                v500[s][r] = table.value(mid);
                const PlaneTree full = grow_lpam_tree(mid, 1000, 0.0, rng);
                v1000[s][r] = table.value(full);
            });
        }
        const auto moments = [](const std::vector<double>& v) {
            MomentAccumulator acc;
            for (double x : v) acc.add(x);
            return acc;
        };
        const auto m5p = moments(v500[0]), m5s = moments(v500[1]);
        const auto m10p = moments(v1000[0]), m10s = moments(v1000[1]);
        out[0] = tv_lower_bound(m5p.mean(), m5p.variance(), m5s.mean(), m5s.variance());
        out[1] = tv_lower_bound(m10p.mean(), m10p.variance(), m10s.mean(), m10s.variance());
    };
    double stated[2], minimal[2];
    mc_bounds(witness, 7'000'000, stated);
    mc_bounds(distinguishing_tau(seeds[0], seeds[1]), 7'500'000, minimal);
    const double rel = std::abs(stated[0] - stated[1]) / std::max(stated[0], stated[1]);
    measured = "stated witness lb(500)=" + fmt(stated[0]) + ", lb(1000)=" + fmt(stated[1]) +
               ", rel diff=" + fmt(rel) + " (needs > 0.02 and < 20%); minimal witness lb=" +
               fmt(minimal[0]) + "/" + fmt(minimal[1]) +
               "; bound scale is set by high moments of the degree limit; " + exact_detail.str();
    return stated[0] > 0.02 && stated[1] > 0.02 && rel < 0.20;
}

// ---- C8: max-degree scaling --------------------------------------------------

bool c8_degree_scaling(const Ctx& ctx, std::string& measured) {
    constexpr int kReps = 200;
    const std::vector<int> sizes = {1 << 10, 1 << 11, 1 << 12, 1 << 13, 1 << 14, 1 << 15, 1 << 16};
    std::ostringstream detail;
    bool ok = true;
    for (const double delta : {0.0, 1.0}) {
        std::vector<std::vector<double>> maxdeg(sizes.size(), std::vector<double>(kReps));
        parallel_for_index(kReps, ctx.threads, [&](size_t r) {
            const uint64_t tag = 8'000'000 + static_cast<uint64_t>(delta * 100) * 10'000 + r;
            const GrowthTrajectory traj =
                grow_lpam(PlaneTree::single_vertex(true), sizes.back(), delta, derive_stream(ctx.rng, tag));
            const std::vector<int> profile = max_degree_profile(traj);
            for (size_t i = 0; i < sizes.size(); ++i) maxdeg[i][r] = profile[sizes[i] - 1];
        });
        std::vector<double> log_n, log_med;
        for (size_t i = 0; i < sizes.size(); ++i) {
            log_n.push_back(std::log(sizes[i]));
            log_med.push_back(std::log(median(maxdeg[i])));
        }
        const double slope = least_squares(log_n, log_med).slope;
        const double target = 1.0 / (2.0 + delta);
        detail << (delta > 0 ? "; " : "") << "delta=" << delta << ": slope " << fmt(slope) << " (target "
               << fmt(target) << ")";
        ok = ok && std::abs(slope - target) <= 0.05;
    }
    measured = detail.str();
    return ok;
}

// ---- C9: first-moment scaling of the edge observable --------------------------

bool c9_observable_scaling(const Ctx& ctx, std::string& measured) {
    constexpr int kReps = 200;
    const std::vector<int> sizes = {1 << 8, 1 << 9, 1 << 10, 1 << 11, 1 << 12, 1 << 13, 1 << 14};
    const DecoratedTree edge11 = decorated_from_plane(PlaneTree::path(2), {1, 1});
    std::vector<std::vector<double>> values(sizes.size(), std::vector<double>(kReps));
    parallel_for_index(kReps, ctx.threads, [&](size_t r) {
        const GrowthTrajectory traj =
            grow_lpam(PlaneTree::single_vertex(true), sizes.back(), 0.0, derive_stream(ctx.rng, 9'000'000 + r));
        for (size_t i = 0; i < sizes.size(); ++i) {
            values[i][r] = static_cast<double>(d_tau(edge11, traj.state_at(sizes[i])));
        }
    });
    std::vector<double> log_n, log_mean;
    for (size_t i = 0; i < sizes.size(); ++i) {
        MomentAccumulator acc;
        for (double v : values[i]) acc.add(v);
        log_n.push_back(std::log(sizes[i]));
        log_mean.push_back(std::log(acc.mean()));
    }
    const double slope = least_squares(log_n, log_mean).slope;

    // Reference: the expectation obeys a closed three-term recurrence
    // (verified exactly in the unit suite), whose slope over the same
    // window shows the polylog factor on top of the leading power.
    std::vector<double> rx, ry;
    double de = 0, d2 = 0;
    for (int n = 1; n <= sizes.back(); ++n) {
        if (n >= sizes.front() && (n & (n - 1)) == 0) {
            rx.push_back(std::log(n));
            ry.push_back(std::log(de));
        }
        const double denom = 2.0 * n - 1.0;
        const double de_next = (1 + 2 / denom) * de + (2 * d2 + 4 * denom) / denom;
        d2 = (1 + 2 / denom) * d2 + 2;
        de = de_next;
    }
    const double recurrence_slope = least_squares(rx, ry).slope;
    measured = "sampled slope " + fmt(slope) + " (needs 1.0 +- 0.1); exact-recurrence slope over the same window " +
               fmt(recurrence_slope);
    return std::abs(slope - 1.0) <= 0.1;
}

// ---- C10: net bound for partial gluings ----------------------------------------

bool c10_net_bound(const Ctx& ctx, std::string& measured) {
    constexpr int kSteps = 10000;
    const std::vector<int> ks = {10, 100, 1000};
    Rng rng(derive_stream(ctx.rng, 10'000'000));
    BinaryGrower grower(BinaryGrower::Mode::Remy, 0.5);
    for (int s = 0; s < kSteps; ++s) grower.step(rng);
    const LabeledBinaryTree bt = grower.tree();
    const GluResult glu = glu_with_classes(bt);
    const GraphCSR glu_csr = csr_of(glu.graph);

    // Tree adjacency as a unit graph for the net radius.
    Looptree tree_graph;
    tree_graph.num_vertices = bt.num_vertices;
    for (const auto& [u, v] : bt.edges) tree_graph.add_edge(u, v);
    const GraphCSR tree_csr = csr_of(tree_graph);

    // Incremental span marking with snapshots at the requested k.
    const auto adj = bt.adjacency();
    std::vector<int> parent(bt.num_vertices, -1), order{bt.marked_leaves[0]};
    std::vector<char> visited(bt.num_vertices, 0), in_span(bt.num_vertices, 0);
    visited[order[0]] = 1;
    for (size_t i = 0; i < order.size(); ++i) {
        for (int u : adj[order[i]]) {
            if (!visited[u]) {
                visited[u] = 1;
                parent[u] = order[i];
                order.push_back(u);
            }
        }
    }
    in_span[bt.marked_leaves[0]] = 1;
    std::vector<std::vector<int>> span_at_k(ks.size());
    size_t next_k = 0;
    for (int i = 1; i <= ks.back(); ++i) {
        int w = bt.marked_leaves[i];
        while (!in_span[w]) {
            in_span[w] = 1;
            w = parent[w];
        }
        while (next_k < ks.size() && i == ks[next_k]) {
            for (int v = 0; v < bt.num_vertices; ++v) {
                if (in_span[v]) span_at_k[next_k].push_back(v);
            }
            ++next_k;
        }
    }

    std::ostringstream detail;
    double prev_h = -1;
    bool ok = true;
    for (size_t j = 0; j < ks.size(); ++j) {
        std::vector<int> sources, leaf_sources;
        sources.reserve(span_at_k[j].size());
        for (int v : span_at_k[j]) sources.push_back(glu.class_of[v]);
        for (int i = 0; i <= ks[j]; ++i) leaf_sources.push_back(bt.marked_leaves[i]);
        const std::vector<int> dist_glu = multi_source_bfs_distances(glu_csr, sources);
        const std::vector<int> dist_tree = multi_source_bfs_distances(tree_csr, leaf_sources);
        const double hausdorff = *std::max_element(dist_glu.begin(), dist_glu.end());
        const double net = *std::max_element(dist_tree.begin(), dist_tree.end());
        detail << (j ? "; " : "") << "k=" << ks[j] << ": H=" << hausdorff << " net=" << net;
        ok = ok && hausdorff <= 2 * net;
        if (prev_h >= 0 && hausdorff > prev_h) ok = false;
        prev_h = hausdorff;
    }
    measured = detail.str();
    return ok;
}

// ---- C11: rescaled diameters against the line-breaking space --------------------

bool c11_diameter_constant(const Ctx& ctx, std::string& measured) {
    constexpr int kReps = 200;
    const int n = ctx.diameter_n;
    constexpr int kCircles = 10000;
    std::vector<double> loop_diam(kReps), chain_diam(kReps);
    parallel_for_index(kReps, ctx.threads, [&](size_t r) {
        Rng rng(derive_stream(ctx.rng, 11'000'000 + r));
        const PlaneTree t = grow_lpam_tree(PlaneTree::single_vertex(true), n, 0.0, rng);
        loop_diam[r] = static_cast<double>(looptree_diameter(t)) / std::sqrt(static_cast<double>(n));
    });
    parallel_for_index(kReps, ctx.threads, [&](size_t r) {
        Rng rng(derive_stream(ctx.rng, 11'500'000 + r));
        chain_diam[r] = chain_diameter(sample_circle_chain(kCircles, rng));
    });
    MomentAccumulator ml, mc;
    for (double d : loop_diam) ml.add(d);
    for (double d : chain_diam) mc.add(d);
    const double target = 2.0 * std::sqrt(2.0) * mc.mean();
    const double rel = std::abs(ml.mean() - target) / target;
    // The intensity t/2 of the circle process already carries the limit
    // constant: the direct ratio of the two raw diameters shows how the
    // constructions actually line up.
    measured = "scaled looptree diameter " + fmt(ml.mean()) + ", line-breaking diameter " + fmt(mc.mean()) +
               ", direct ratio " + fmt(ml.mean() / mc.mean()) + "; criterion target 2*sqrt(2)*line-breaking = " +
               fmt(target) + ", rel err " + fmt(rel) + " (needs <= 0.15)";
    return rel <= 0.15;
}

// ---- C12: ball-volume dimension --------------------------------------------------

std::vector<double> log_spaced(double lo, double hi, int count) {
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i) {
        out[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
    }
    return out;
}

bool c12_dimension(const Ctx& ctx, std::string& measured) {
    std::ostringstream detail;
    Rng rng(derive_stream(ctx.rng, 12'000'000));

    const Looptree circle = cycle_graph(1000);
    const double circle_diam = 500.0;
    const DimensionEstimate per =
        dimension_estimate(csr_of(circle), 16, log_spaced(0.02 * circle_diam, 0.2 * circle_diam, 8), rng);
    detail << "circle slope " << fmt(per.slope);
    if (std::abs(per.slope - 1.0) > 0.1) {
        measured = detail.str() + " out of 1 +- 0.1";
        return false;
    }

    const Looptree grid = torus_grid_graph(400);
    const double grid_diam = 400.0;
    const DimensionEstimate grid_est =
        dimension_estimate(csr_of(grid), 16, log_spaced(0.02 * grid_diam, 0.2 * grid_diam, 8), rng);
    detail << "; grid slope " << fmt(grid_est.slope);
    if (std::abs(grid_est.slope - 2.0) > 0.1) {
        measured = detail.str() + " out of 2 +- 0.1";
        return false;
    }

    const PlaneTree t = grow_lpam_tree(PlaneTree::single_vertex(true), ctx.dimension_n, 0.0, rng);
    const double diam = static_cast<double>(looptree_diameter(t));
    const DimensionEstimate loop_est =
        dimension_estimate(csr_of(loop(t)), 64, log_spaced(0.02 * diam, 0.2 * diam, 8), rng);
    detail << "; looptree slope " << fmt(loop_est.slope) << " at n=" << ctx.dimension_n;
    measured = detail.str();
    return loop_est.slope >= 1.7 && loop_est.slope <= 2.3;
}

// ---- C13: continuum samplers -------------------------------------------------------

bool c13_samplers(const Ctx& ctx, std::string& measured) {
    constexpr int kSamples = 100000;
    Rng rng(derive_stream(ctx.rng, 13'000'000));
    std::vector<double> alphas(kSamples);
    for (double& a : alphas) a = sample_split_alpha(rng);
    const double ks_p = ks_test_pvalue(alphas, [](double x) {
        return x <= 0 ? 0.0 : x >= 1 ? 1.0 : std::sqrt(x);
    });

    const std::vector<double> walk = mass_walk(kSamples, rng);
    MomentAccumulator inc;
    inc.add(walk[0]);
    for (size_t i = 1; i < walk.size(); ++i) inc.add(walk[i] - walk[i - 1]);

    const auto density = [](double s) { return 8.0 * s * s * s * std::exp(-2.0 * s * s); };
    const double mass = integrate(density, 0.0, 10.0, 1e-10);
    const double oracle_mean = integrate([&](double s) { return s * density(s); }, 0.0, 10.0, 1e-10);
    MomentAccumulator total;
    for (int i = 0; i < kSamples; ++i) {
        const auto [l1, l2, l3] = sample_triple_lengths(rng);
        total.add(l1 + l2 + l3);
    }
    const double se_gap = std::abs(total.mean() - oracle_mean) / total.stderr_of_mean();

    measured = "alpha KS p=" + fmt(ks_p) + "; walk increment mean " + fmt(inc.mean()) +
               "; density mass " + fmt(mass, 9) + "; total-length mean gap " + fmt(se_gap, 3) + " se";
    return ks_p > 0.01 && std::abs(inc.mean() - 2.0) <= 0.04 && std::abs(mass - 1.0) <= 1e-6 && se_gap <= 3.0;
}

// ---- C14: affine growth vs weighted splits -----------------------------------------

bool c14_affine_identity(const Ctx&, std::string& measured) {
    for (const int delta : {0, 1}) {
        const Rat alpha(1, 2 + delta);
        for (int n = 1; n <= 4; ++n) {
            const auto loop_law =
                loop_law_from_plane(exact_plane_lpam_law(PlaneTree::single_vertex(true), n, Rat(delta)));
            const auto glu_law = glu_law_from_binary(exact_ford_law(n - 1, alpha, true));
            if (loop_law != glu_law) {
                measured = "law mismatch at delta=" + std::to_string(delta) + " n=" + std::to_string(n);
                return false;
            }
        }
    }
    for (int steps = 1; steps <= 4; ++steps) {
        const auto remy = exact_remy_law(steps).states;
        if (exact_ford_law(steps, Rat(1, 2), false).states != remy ||
            exact_ford_law(steps, Rat(1, 2), true).states != remy) {
            measured = "alpha=1/2 variant deviates from the uniform chain at step " + std::to_string(steps);
            return false;
        }
    }
    measured = "laws equal for delta in {0,1}, n <= 4; both weighted variants uniform at alpha=1/2";
    return true;
}

struct Criterion {
    int id;
    const char* name;
    const char* suite;
    bool (*run)(const Ctx&, std::string&);
};

const Criterion kCriteria[] = {
    {1, "one-step recurrence identity (exact)", "exact", c1_recurrence},
    {2, "martingale one-step identity (exact)", "exact", c2_martingale},
    {3, "falling-factorial identities", "exact", c3_falling_factorials},
    {4, "uniform law of split-grown labeled trees", "exact", c4_remy_uniform},
    {5, "looptree/gluing coupling", "statistical", c5_coupling},
    {6, "urn seed decomposition matches direct growth", "statistical", c6_seed_decomposition},
    {7, "seed discrimination TV bounds", "statistical", c7_discrimination},
    {8, "max-degree scaling exponents", "statistical", c8_degree_scaling},
    {9, "observable first-moment scaling", "statistical", c9_observable_scaling},
    {10, "net bound for partial gluings", "statistical", c10_net_bound},
    {11, "diameter constant vs line-breaking space", "statistical", c11_diameter_constant},
    {12, "ball-volume dimension estimates", "statistical", c12_dimension},
    {13, "continuum samplers", "statistical", c13_samplers},
    {14, "affine growth looptree law vs weighted splits", "exact", c14_affine_identity},
};

}  // namespace

std::vector<CriterionResult> run_verification(const VerifyOptions& options, std::ostream& progress) {
    Ctx ctx;
    ctx.rng = options.rng;
    ctx.threads = options.threads > 0 ? options.threads : default_thread_count();
    ctx.dimension_n = options.dimension_n;
    ctx.diameter_n = options.diameter_n;

    std::vector<CriterionResult> results;
    const auto start = std::chrono::steady_clock::now();
    for (const Criterion& c : kCriteria) {
        if (options.suite != "all" && options.suite != c.suite) continue;
        CriterionResult res;
        res.id = c.id;
        res.name = c.name;
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (elapsed > options.budget_seconds) {
            res.ran = false;
            res.measured = "skipped: budget exceeded";
            progress << "[SKIP] C" << c.id << " " << c.name << "\n" << std::flush;
            results.push_back(res);
            continue;
        }
        const auto t0 = std::chrono::steady_clock::now();
        res.ran = true;
        try {
            res.passed = c.run(ctx, res.measured);
        } catch (const std::exception& e) {
            res.passed = false;
            res.measured = std::string("exception: ") + e.what();
        }
        res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        progress << (res.passed ? "[PASS] C" : "[FAIL] C") << c.id << " " << c.name << ": " << res.measured
                 << " (" << fmt(res.seconds, 3) << "s)\n"
                 << std::flush;
        results.push_back(res);
    }
    return results;
}

std::string verification_report_json(const std::vector<CriterionResult>& results,
                                     const VerifyOptions& options, bool complete) {
    std::ostringstream out;
    out << "{\n  \"suite\": \"" << options.suite << "\",\n  \"rng\": " << options.rng
        << ",\n  \"complete\": " << (complete ? "true" : "false") << ",\n  \"criteria\": [\n";
    bool all = true;
    for (size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        all = all && r.ran && r.passed;
        out << "    {\"id\": " << r.id << ", \"name\": \"" << r.name << "\", \"ran\": "
            << (r.ran ? "true" : "false") << ", \"passed\": " << (r.passed ? "true" : "false")
            << ", \"seconds\": " << r.seconds << ", \"measured\": \"";
        for (char ch : r.measured) {
            if (ch == '"' || ch == '\\') out << '\\';
            out << ch;
        }
        out << "\"}" << (i + 1 < results.size() ? "," : "") << "\n";
    }
    out << "  ],\n  \"all_passed\": " << (all ? "true" : "false") << "\n}\n";
    return out.str();
}

}  // namespace lpam
