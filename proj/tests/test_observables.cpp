#include "lpam/decorated.hpp"
#include "lpam/enumerate.hpp"
#include "lpam/exact_dist.hpp"
#include "lpam/growth.hpp"
#include "lpam/observables.hpp"
#include "lpam/rng.hpp"
#include "lpam/stats.hpp"

#include <doctest.h>

#include <cmath>

using namespace lpam;

namespace {
DecoratedTree edge11() { return decorated_from_plane(PlaneTree::path(2), {1, 1}); }

DecoratedTree star4_deg() {
    const PlaneTree star = PlaneTree::star(4);
    std::vector<int> labels(4);
    for (Vertex v = 0; v < 4; ++v) labels[v] = star.degree(v);
    return decorated_from_plane(star, labels);
}
}  // namespace

TEST_CASE("falling factorial") {
    CHECK(falling_factorial(5, 2) == 20);
    CHECK(falling_factorial(7, 0) == 1);
    CHECK(falling_factorial(1, 2) == 0);
    CHECK(falling_factorial(3, 3) == 6);
    CHECK_THROWS_AS(falling_factorial(-1, 2), std::invalid_argument);
    CHECK_THROWS_AS(falling_factorial(2, -1), std::invalid_argument);
}

TEST_CASE("decorated tree enumeration and order") {
    const auto tiny = enumerate_decorated(1, 1);
    CHECK(tiny.elements.size() == 1);
    CHECK(tiny.elements[0].weight() == 1);
    CHECK(tiny.elements[0].size() == 1);

    const auto small = enumerate_decorated(2, 2);
    CHECK(small.elements.size() == 3);  // label-1 vertex, label-2 vertex, (1,1) edge

    CHECK_THROWS_AS(enumerate_decorated(7, 3), GuardError);

    // Irreflexive and antisymmetric.
    const auto u = enumerate_decorated(4, 4);
    for (size_t i = 0; i < u.elements.size(); ++i) {
        CHECK_FALSE(u.precedes(i, i));
        for (size_t j = 0; j < u.elements.size(); ++j) {
            const bool both = u.precedes(i, j) && u.precedes(j, i);
            CHECK_FALSE(both);
        }
    }
}

TEST_CASE("decorated json round trip") {
    const DecoratedTree t = star4_deg();
    const DecoratedTree back = decorated_from_json(decorated_to_json(t));
    CHECK(back.code() == t.code());
    CHECK(back.weight() == 6);
}

TEST_CASE("observable values") {
    // The single label-1 vertex counts the total degree.
    const DecoratedTree one = decorated_single(1);
    for (int n = 2; n <= 7; ++n) {
        for (const auto& [code, t] : enumerate_abstract_trees(n)) {
            CHECK(d_tau(one, t) == 2 * n - 2);
        }
    }
    CHECK(d_tau(edge11(), PlaneTree::path(2)) == 2);
    CHECK(d_tau(star4_deg(), PlaneTree::star(4)) == 36);
    CHECK(d_tau(star4_deg(), PlaneTree::path(4)) == 0);
    // Patterns larger than the host count nothing.
    CHECK(d_tau(star4_deg(), PlaneTree::path(3)) == 0);
}

TEST_CASE("closed forms match embedding enumeration") {
    Rng rng(51);
    const auto universe = enumerate_decorated(6, 4);
    for (int rep = 0; rep < 60; ++rep) {
        const PlaneTree t = grow_lpam_tree(PlaneTree::path(2), 4 + static_cast<int>(rng.below(30)), 0.0, rng);
        const auto values = d_tau_many(universe.elements, t);
        for (size_t i = 0; i < universe.elements.size(); ++i) {
            CHECK(values[i] == d_tau_by_enumeration(universe.elements[i], t));
        }
    }
}

TEST_CASE("pair observable") {
    const DecoratedTree one = decorated_single(1);
    CHECK(d_tau_pair(one, one, PlaneTree::path(3)) == 10);
    CHECK(d_tau_pair(edge11(), edge11(), PlaneTree::path(3)) == 0);  // needs 4 distinct vertices
    Rng rng(52);
    for (int rep = 0; rep < 20; ++rep) {
        const PlaneTree t = grow_lpam_tree(PlaneTree::path(2), 8, 0.0, rng);
        const int64_t joint = d_tau_pair(edge11(), one, t);
        CHECK(joint <= d_tau(edge11(), t) * d_tau(one, t));
    }
}

TEST_CASE("recurrence coefficients") {
    const RecurrenceCoeffs rc_edge = recurrence_coeffs(edge11());
    CHECK(rc_edge.linear.at(decorated_single(2).code()) == 2);
    CHECK(rc_edge.linear.at(decorated_single(1).code()) == 4);

    const RecurrenceCoeffs rc_two = recurrence_coeffs(decorated_single(2));
    CHECK(rc_two.linear.size() == 1);
    CHECK(rc_two.linear.at(decorated_single(1).code()) == 2);

    CHECK_THROWS_AS(recurrence_coeffs(decorated_single(1)), std::invalid_argument);
}

TEST_CASE("one-step expectation oracle") {
    const DecoratedTree one = decorated_single(1);
    for (int n = 2; n <= 6; ++n) {
        for (const auto& [code, t] : enumerate_abstract_trees(n)) {
            CHECK(one_step_expectation(one, t) == 2 * n);
        }
    }
    CHECK(one_step_expectation(edge11(), PlaneTree::path(3)) == 17);
    CHECK_THROWS_AS(one_step_expectation(edge11(), PlaneTree::path(10)), GuardError);
}

TEST_CASE("martingale tables") {
    const MartingaleTable table = MartingaleTable::build(edge11(), 12, ArithmeticMode::Exact);
    CHECK(table.alpha_exact(3) == Rat(1, 2));
    CHECK(table.alpha_exact(2) == 1);

    const MartingaleTable one = MartingaleTable::build(decorated_single(1), 12, ArithmeticMode::Exact);
    Rng rng(53);
    for (int rep = 0; rep < 20; ++rep) {
        const PlaneTree t = grow_lpam_tree(PlaneTree::path(2), 3 + static_cast<int>(rng.below(9)), 0.0, rng);
        CHECK(one.value_exact(t) == 1);
    }

    // A martingale step for the edge pattern on the 3-path, by hand:
    // grafting anywhere preserves the expected value.
    const PlaneTree path3 = PlaneTree::path(3);
    Rat acc = 0;
    for (Vertex v = 0; v < 3; ++v) {
        PlaneTree g = path3;
        g.attach_leaf(v);
        acc += Rat(path3.degree(v)) * table.value_exact(g) / Rat(4);
    }
    CHECK(acc == table.value_exact(path3));
}

TEST_CASE("sample mean of the martingale stays at the seed value") {
    const DecoratedTree tau = edge11();
    const MartingaleTable table = MartingaleTable::build(tau, 200, ArithmeticMode::Float64);
    const PlaneTree seed = PlaneTree::path(3);
    const double at_seed = table.value(seed);
    MomentAccumulator acc;
    Rng rng(54);
    for (int rep = 0; rep < 2000; ++rep) {
        acc.add(table.value(grow_lpam_tree(seed, 200, 0.0, rng)));
    }
    CHECK(std::abs(acc.mean() - at_seed) <= 3 * acc.stderr_of_mean());
}

TEST_CASE("exact and float pipelines agree at the crossover") {
    const DecoratedTree witness = star4_deg();
    const MartingaleTable exact = MartingaleTable::build(witness, 60, ArithmeticMode::Exact);
    const MartingaleTable fl = MartingaleTable::build(witness, 60, ArithmeticMode::Float64);
    const int k = static_cast<int>(exact.universe().elements.size());
    double worst = 0;
    for (int n = 2; n <= 60; ++n) {
        for (int i = 0; i < k; ++i) {
            worst = std::max(worst, std::abs(exact.alpha(n, i) - fl.alpha(n, i)));
            for (int j = 0; j < i; ++j) worst = std::max(worst, std::abs(exact.a(n, i, j) - fl.a(n, i, j)));
        }
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("coefficients stay within polylog growth") {
    const auto scan = scan_coefficient_magnitude(edge11(), 10000, {100, 1000, 10000});
    REQUIRE(scan.size() == 3);
    // Against n^(1/4): a polylog sequence falls well below it at these n.
    for (const auto& [n, value] : scan) {
        CHECK(value < std::pow(static_cast<double>(n), 0.25) * 10.0);
    }
    // Growth from n=100 to n=10000 stays within a cubic-log envelope.
    CHECK(scan[2].second / scan[0].second < 8.0);
}

TEST_CASE("seed indicator property") {
    for (int size = 4; size <= 6; ++size) {
        for (const auto& [code, s] : enumerate_abstract_trees(size)) {
            std::vector<int> labels(s.size());
            for (Vertex v = 0; v < s.size(); ++v) labels[v] = s.degree(v);
            const DecoratedTree tau = decorated_from_plane(s, labels);
            for (const auto& [tcode, t] : enumerate_abstract_trees(size)) {
                if (tcode == code) {
                    CHECK(d_tau_by_enumeration(tau, t) > 0);
                } else {
                    CHECK(d_tau_by_enumeration(tau, t) == 0);
                }
            }
        }
    }
}

TEST_CASE("distinguishing decorated tree") {
    const DecoratedTree found = distinguishing_tau(PlaneTree::path(4), PlaneTree::star(4));
    CHECK(found.code() == decorated_single(2).code());
    // Nothing strictly below it separates the laws: the only candidate is
    // the label-1 vertex, whose expectation is the total degree.
    const auto l1 = exact_step_distribution(PlaneTree::path(4), 4);
    const auto l2 = exact_step_distribution(PlaneTree::star(4), 4);
    Rat e1 = 0, e2 = 0;
    for (const auto& [c, p] : l1.mass) e1 += p * Rat(d_tau(decorated_single(1), l1.reps.at(c)));
    for (const auto& [c, p] : l2.mass) e2 += p * Rat(d_tau(decorated_single(1), l2.reps.at(c)));
    CHECK(e1 == e2);

    CHECK_THROWS_AS(distinguishing_tau(PlaneTree::path(4), PlaneTree::path(4)), std::invalid_argument);
    CHECK_THROWS_AS(distinguishing_tau(PlaneTree::path(2), PlaneTree::star(4)), std::invalid_argument);
}

TEST_CASE("tv lower bound formula") {
    CHECK(tv_lower_bound(3.0, 1.0, 3.0, 2.0) == 0.0);
    CHECK(tv_lower_bound(4.0, 0.0, 3.0, 0.0) == 1.0);
    CHECK(tv_lower_bound(1.0, 0.5, 0.0, 0.5) == doctest::Approx(1.0 / 3.0));
    CHECK_THROWS_AS(tv_lower_bound(0, -1, 0, 0), std::invalid_argument);
    CHECK(tv_lower_bound_exact(Rat(1), Rat(1, 2), Rat(0), Rat(1, 2)) == Rat(1, 3));
}
