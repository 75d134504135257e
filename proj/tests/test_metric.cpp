#include "lpam/metric.hpp"
#include "lpam/plane_tree.hpp"
#include "lpam/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace lpam;

namespace {
FiniteMetricSpace path_space(int n) {
    FiniteMetricSpace s(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) s.set(i, j, j - i);
    }
    return s;
}

FiniteMetricSpace random_space(int n, Rng& rng) {
    // Random points on a line keep the triangle inequality trivially.
    std::vector<double> pos(n);
    for (double& p : pos) p = rng.real01() * 10;
    FiniteMetricSpace s(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) s.set(i, j, std::abs(pos[i] - pos[j]) + 1e-6);
    }
    return s;
}
}  // namespace

TEST_CASE("hausdorff within a common space") {
    const FiniteMetricSpace s = path_space(3);
    CHECK(hausdorff_in_common(s, {0, 1}, {0, 1}) == 0);
    CHECK(hausdorff_in_common(s, {0}, {2}) == 2);
    CHECK(hausdorff_in_common(s, {0}, {1, 2}) == hausdorff_in_common(s, {1, 2}, {0}));
    CHECK_THROWS_AS(hausdorff_in_common(s, {}, {0}), std::invalid_argument);
}

TEST_CASE("correspondence upper bound") {
    const FiniteMetricSpace s = path_space(4);
    CHECK(gh_upper_from_correspondence(s, s, identity_correspondence(4)) == 0);

    FiniteMetricSpace point(1);
    FiniteMetricSpace pair(2);
    pair.set(0, 1, 3.0);
    Correspondence r;
    r.pairs = {{0, 0}, {0, 1}};
    CHECK(gh_upper_from_correspondence(point, pair, r) == doctest::Approx(1.5));

    FiniteMetricSpace scaled = path_space(4);
    scaled.set_scale(1.25);
    CHECK(gh_upper_from_correspondence(s, scaled, identity_correspondence(4)) ==
          doctest::Approx(0.25 * 3 / 2));

    Correspondence partial;
    partial.pairs = {{0, 0}};
    CHECK_THROWS_AS(gh_upper_from_correspondence(s, s, partial), std::invalid_argument);
}

TEST_CASE("exact small GH") {
    const FiniteMetricSpace s = path_space(4);
    CHECK(gh_exact_small(s, s) == 0);

    FiniteMetricSpace point(1);
    FiniteMetricSpace pair(2);
    pair.set(0, 1, 3.0);
    CHECK(gh_exact_small(point, pair) == doctest::Approx(1.5));

    FiniteMetricSpace big(8);
    CHECK_THROWS_AS(gh_exact_small(big, s), GuardError);

    Rng rng(61);
    for (int rep = 0; rep < 20; ++rep) {
        const FiniteMetricSpace x = random_space(2 + rng.below(4), rng);
        const FiniteMetricSpace y = random_space(2 + rng.below(4), rng);
        const double exact = gh_exact_small(x, y);
        CHECK(exact >= std::abs(x.diameter() - y.diameter()) / 2 - 1e-12);
        // Any explicit correspondence only gives an upper bound.
        Correspondence r;
        for (int i = 0; i < x.size(); ++i) r.pairs.emplace_back(i, i % y.size());
        for (int j = 0; j < y.size(); ++j) r.pairs.emplace_back(j % x.size(), j);
        CHECK(exact <= gh_upper_from_correspondence(x, y, r) + 1e-12);
    }
}

TEST_CASE("marked GH forces mark pairing") {
    // Two 2-point spaces, same shape; marking opposite ends costs nothing
    // here, but a 3-point line with marks at different ends does.
    FiniteMetricSpace x = path_space(3);
    FiniteMetricSpace y = path_space(3);
    x.marks() = {0};
    y.marks() = {2};
    // An isometry maps 0 -> 2; marked GH is still 0 by the reflection.
    CHECK(gh_exact_small(x, y) == 0);
    y.marks() = {1};
    CHECK(gh_exact_small(x, y) > 0);
}

TEST_CASE("net radius") {
    const FiniteMetricSpace s = path_space(3);
    CHECK(net_radius(s, {0, 1, 2}) == 0);
    CHECK(net_radius(s, {0, 2}) == 1);
    CHECK(net_radius(s, {0}) == 2);
    CHECK(net_radius(s, {0, 1}) <= net_radius(s, {0}));
    CHECK_THROWS_AS(net_radius(s, {}), std::invalid_argument);
}

TEST_CASE("csv round trip and validation") {
    FiniteMetricSpace s = path_space(4);
    s.marks() = {1, 3};
    const FiniteMetricSpace back = FiniteMetricSpace::from_csv(s.to_csv());
    CHECK(back.size() == 4);
    CHECK(back.marks() == s.marks());
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) CHECK(back.d(i, j) == s.d(i, j));
    }
    s.validate();

    FiniteMetricSpace broken(3);
    broken.set(0, 1, 1);
    broken.set(1, 2, 1);
    broken.set(0, 2, 5);  // violates the triangle inequality
    CHECK_THROWS_AS(broken.validate(), std::invalid_argument);
}
