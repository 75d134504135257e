#include "lpam/exact_dist.hpp"
#include "lpam/looptree.hpp"

#include <doctest.h>

using namespace lpam;

TEST_CASE("one-step law from the 3-path") {
    const ExactDistribution law = exact_step_distribution(PlaneTree::path(3), 4);
    CHECK(law.mass.size() == 2);
    CHECK(law.mass.at(canonical_code(PlaneTree::path(4))) == Rat(1, 2));
    CHECK(law.mass.at(canonical_code(PlaneTree::star(4))) == Rat(1, 2));
    CHECK(law.total() == 1);
}

TEST_CASE("masses always sum to one exactly") {
    for (int n = 4; n <= 9; ++n) {
        CHECK(exact_step_distribution(PlaneTree::path(4), n).total() == 1);
        CHECK(exact_step_distribution(PlaneTree::star(4), n).total() == 1);
    }
}

TEST_CASE("guards and validation") {
    CHECK_THROWS_AS(exact_step_distribution(PlaneTree::path(3), 10), GuardError);
    CHECK_THROWS_AS(exact_step_distribution(PlaneTree::single_vertex(true), 4), std::invalid_argument);
    CHECK_THROWS_AS(exact_ford_law(6, Rat(1, 2), false), GuardError);
    CHECK_THROWS_AS(exact_ford_law(2, Rat(2), false), std::invalid_argument);
    CHECK_THROWS_AS(exact_plane_lpam_law(PlaneTree::path(3), 20, Rat(0)), GuardError);
}

TEST_CASE("deterministic seeds have disjoint supports") {
    const auto l1 = exact_step_distribution(PlaneTree::path(4), 4);
    const auto l2 = exact_step_distribution(PlaneTree::star(4), 4);
    CHECK(total_variation(l1.mass, l2.mass) == 1);
}

TEST_CASE("total variation is nonincreasing along the shared kernel") {
    Rat prev = 1;
    for (int n = 4; n <= 8; ++n) {
        const Rat tv = total_variation(exact_step_distribution(PlaneTree::path(4), n).mass,
                                       exact_step_distribution(PlaneTree::star(4), n).mass);
        CHECK(tv <= prev);
        prev = tv;
    }
}

TEST_CASE("geodesic classes on the cherry") {
    LabeledBinaryTree cherry;
    cherry.num_vertices = 4;
    cherry.edges = {{0, 3}, {3, 1}, {3, 2}};
    cherry.marked_leaves = {0, 1, 2};
    const auto cls = geodesic_edge_classes(cherry);
    CHECK(cls == std::vector<int>{1, 1, 2});
}

TEST_CASE("uniform split law counts") {
    const int double_factorial[] = {1, 1, 3, 15, 105};
    for (int s = 1; s <= 4; ++s) {
        const BinaryExactLaw law = exact_remy_law(s);
        CHECK(static_cast<int>(law.states.size()) == double_factorial[s]);
        for (const auto& [code, p] : law.states) CHECK(p == Rat(1, double_factorial[s]));
    }
}

TEST_CASE("weighted split laws at alpha one half") {
    for (int s = 1; s <= 3; ++s) {
        const auto remy = exact_remy_law(s).states;
        CHECK(exact_ford_law(s, Rat(1, 2), false).states == remy);
        CHECK(exact_ford_law(s, Rat(1, 2), true).states == remy);
    }
}

TEST_CASE("affine plane law equals modified weighted splits (small)") {
    for (const int delta : {0, 1}) {
        for (int n = 1; n <= 3; ++n) {
            const auto ll =
                loop_law_from_plane(exact_plane_lpam_law(PlaneTree::single_vertex(true), n, Rat(delta)));
            const auto gl = glu_law_from_binary(exact_ford_law(n - 1, Rat(1, 2 + delta), true));
            CHECK(ll == gl);
        }
    }
}

TEST_CASE("distribution json uses exact fractions") {
    const auto law = exact_step_distribution(PlaneTree::path(3), 4);
    const std::string json = distribution_to_json(law.mass);
    CHECK(json.find("1/2") != std::string::npos);
    CHECK(rat_from_string("3/7") == Rat(3, 7));
    CHECK(rat_from_string("5") == Rat(5));
}
