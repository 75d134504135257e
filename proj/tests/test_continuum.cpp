#include "lpam/continuum.hpp"
#include "lpam/stats.hpp"

#include <doctest.h>

#include <cmath>

using namespace lpam;

TEST_CASE("split proportion sampler") {
    Rng rng(71);
    std::vector<double> samples(20000);
    MomentAccumulator mean, log_mean;
    for (double& a : samples) {
        a = sample_split_alpha(rng);
        mean.add(a);
        log_mean.add(-std::log(a));
    }
    CHECK(ks_test_pvalue(samples, [](double x) { return x <= 0 ? 0.0 : x >= 1 ? 1.0 : std::sqrt(x); }) >
          0.001);
    CHECK(std::abs(mean.mean() - 1.0 / 3.0) <= 3 * mean.stderr_of_mean());
    CHECK(std::abs(log_mean.mean() - 2.0) <= 3 * log_mean.stderr_of_mean());
}

TEST_CASE("triple length sampler") {
    const auto density = [](double s) { return 8.0 * s * s * s * std::exp(-2.0 * s * s); };
    CHECK(std::abs(integrate(density, 0, 10, 1e-10) - 1.0) < 1e-6);
    const double oracle_mean = integrate([&](double s) { return s * density(s); }, 0, 10, 1e-10);
    CHECK(oracle_mean == doctest::Approx(0.75 * std::sqrt(std::acos(-1.0) / 2)).epsilon(1e-6));

    Rng rng(72);
    MomentAccumulator total;
    std::vector<double> first, second;
    for (int i = 0; i < 20000; ++i) {
        const auto [a, b, c] = sample_triple_lengths(rng);
        total.add(a + b + c);
        first.push_back(a);
        second.push_back(b);
    }
    CHECK(std::abs(total.mean() - oracle_mean) <= 3 * total.stderr_of_mean());
    CHECK(ks_two_sample_pvalue(first, second) > 0.001);  // exchangeable marginals
}

TEST_CASE("mass walk") {
    Rng rng(73);
    const auto walk = mass_walk(100000, rng);
    MomentAccumulator inc;
    std::vector<double> increments;
    increments.push_back(walk[0]);
    inc.add(walk[0]);
    for (size_t i = 1; i < walk.size(); ++i) {
        increments.push_back(walk[i] - walk[i - 1]);
        inc.add(increments.back());
    }
    CHECK(std::abs(inc.mean() - 2.0) <= 0.04);
    CHECK(std::abs(walk.back() / static_cast<double>(walk.size()) - 2.0) <= 0.05);
    CHECK(std::abs(autocorrelation_lag1(increments)) < 0.02);
}

TEST_CASE("walk increments reproduce the split law") {
    Rng rng(77);
    const auto walk = mass_walk(20000, rng);
    std::vector<double> from_walk;
    from_walk.push_back(std::exp(-walk[0]));
    for (size_t i = 1; i < walk.size(); ++i) from_walk.push_back(std::exp(-(walk[i] - walk[i - 1])));
    std::vector<double> fresh(20000);
    for (double& a : fresh) a = sample_split_alpha(rng);
    CHECK(ks_two_sample_pvalue(from_walk, fresh) > 0.001);
}

TEST_CASE("circle chain lengths and attachment") {
    Rng rng(74);
    // First circumference: 2 sqrt(Exp(1)) has mean sqrt(pi).
    MomentAccumulator theta1;
    for (int i = 0; i < 20000; ++i) theta1.add(sample_circle_chain(1, rng).circle_lengths[0]);
    CHECK(std::abs(theta1.mean() - std::sqrt(std::acos(-1.0))) <= 3 * theta1.stderr_of_mean());

    // Counts below t = 4 follow a mean-4 Poisson law.
    MomentAccumulator count;
    std::vector<double> counts;
    for (int i = 0; i < 20000; ++i) {
        const CircleChain chain = sample_circle_chain(40, rng);
        double theta = 0;
        int below = 0;
        for (double len : chain.circle_lengths) {
            theta += len;
            if (theta <= 4.0) ++below;
        }
        count.add(below);
        counts.push_back(below);
    }
    CHECK(std::abs(count.mean() - 4.0) <= 3 * count.stderr_of_mean());
    CHECK(std::abs(count.variance() - 4.0) < 0.3);

    // Attachments land on earlier circles.
    const CircleChain chain = sample_circle_chain(50, rng);
    for (int j = 1; j < 50; ++j) {
        CHECK(chain.attach[j].first < j);
        CHECK(chain.attach[j].second >= 0);
        CHECK(chain.attach[j].second <= chain.circle_lengths[chain.attach[j].first]);
        CHECK(chain.circle_lengths[j] > 0);
    }
}

TEST_CASE("chain diameter matches the discretized space") {
    Rng rng(75);
    // Single circle: exactly half the circumference.
    const CircleChain one = sample_circle_chain(1, rng);
    CHECK(chain_diameter(one) == doctest::Approx(one.circle_lengths[0] / 2));

    for (int rep = 0; rep < 10; ++rep) {
        const CircleChain chain = sample_circle_chain(2 + rep, rng);
        double err = 0;
        const FiniteMetricSpace space = discretize_chain(chain, 60.0, &err);
        CHECK(std::abs(space.diameter() - chain_diameter(chain)) <= 4 * err + 1e-9);
    }
}

TEST_CASE("dimension estimates on fixtures") {
    Rng rng(76);
    const DimensionEstimate circle =
        dimension_estimate(csr_of(cycle_graph(600)), 8, {6, 10, 16, 26, 40, 60}, rng);
    CHECK(std::abs(circle.slope - 1.0) < 0.1);
    // Profiles are monotone and bounded by one.
    for (size_t i = 0; i < circle.profile.mean_volume.size(); ++i) {
        CHECK(circle.profile.mean_volume[i] <= 1.0);
        if (i > 0) CHECK(circle.profile.mean_volume[i] >= circle.profile.mean_volume[i - 1]);
    }

    const DimensionEstimate grid =
        dimension_estimate(csr_of(torus_grid_graph(120)), 8, {3, 5, 8, 12, 18, 24}, rng);
    CHECK(std::abs(grid.slope - 2.0) < 0.15);

    CHECK_THROWS_AS(dimension_estimate(csr_of(cycle_graph(10)), 4, {2.0}, rng), std::invalid_argument);
    CHECK_THROWS_AS(dimension_estimate(csr_of(cycle_graph(10)), 4, {3.0, 2.0}, rng), std::invalid_argument);
}
