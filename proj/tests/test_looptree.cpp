#include "lpam/binary_growth.hpp"
#include "lpam/enumerate.hpp"
#include "lpam/growth.hpp"
#include "lpam/looptree.hpp"
#include "lpam/rng.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

using namespace lpam;

namespace {
std::multiset<std::pair<int, int>> edge_multiset(const Looptree& g) {
    return {g.edges.begin(), g.edges.end()};
}
}  // namespace

TEST_CASE("loop of small trees") {
    // Single edge: both endpoints contribute a 1-cycle through the edge.
    const Looptree l2 = loop(PlaneTree::path(2));
    CHECK(l2.num_vertices == 1);
    CHECK(edge_multiset(l2) == std::multiset<std::pair<int, int>>{{0, 0}, {0, 0}});

    // Path on 3: a 2-cycle around the center plus two self-loops.
    const Looptree l3 = loop(PlaneTree::path(3));
    CHECK(l3.num_vertices == 2);
    CHECK(l3.edges.size() == 4);
    int self_loops = 0, cross = 0;
    for (const auto& [u, v] : l3.edges) (u == v ? self_loops : cross)++;
    CHECK(self_loops == 2);
    CHECK(cross == 2);

    CHECK_THROWS_AS(loop(PlaneTree::single_vertex(false)), std::invalid_argument);
}

TEST_CASE("loop counts and cycle multiset across all small trees") {
    for (int n = 2; n <= 8; ++n) {
        for (const auto& [code, t] : enumerate_abstract_trees(n)) {
            const LoopResult lr = loop_with_map(t);
            CHECK(lr.graph.num_vertices == t.edge_count());
            CHECK(static_cast<int>(lr.graph.edges.size()) == t.corner_count());
            std::multiset<int> cycle_lengths, degrees;
            for (const auto& cyc : lr.cycles) cycle_lengths.insert(static_cast<int>(cyc.size()));
            for (Vertex v = 0; v < t.size(); ++v) degrees.insert(t.degree(v));
            CHECK(cycle_lengths == degrees);
        }
    }
}

TEST_CASE("planted looptrees") {
    const PlaneTree t1 = PlaneTree::single_vertex(true);
    const Looptree l1 = loop_planted(t1);
    CHECK(l1.num_vertices == 1);
    CHECK(edge_multiset(l1) == std::multiset<std::pair<int, int>>{{0, 0}});

    Rng rng(31);
    const PlaneTree t2 = grow_lpam_tree(t1, 2, 0.0, rng);
    const Looptree l2 = loop_planted(t2);
    CHECK(l2.num_vertices == 2);
    CHECK(l2.edges.size() == 3);  // 2|t| - 1 corners

    CHECK_THROWS_AS(loop_planted(PlaneTree::path(3)), std::invalid_argument);

    // The plant-as-an-edge construction coincides with the literal one.
    for (int rep = 0; rep < 40; ++rep) {
        const PlaneTree t = grow_lpam_tree(t1, 2 + static_cast<int>(rng.below(25)), 0.0, rng);
        CHECK(static_cast<int>(loop_planted(t).edges.size()) == 2 * t.size() - 1);
        CHECK(multigraphs_isomorphic(loop(t), loop_planted(t)));
    }
}

TEST_CASE("discrete gluing") {
    LabeledBinaryTree b1;
    b1.num_vertices = 2;
    b1.edges = {{0, 1}};
    b1.marked_leaves = {0, 1};
    const Looptree g1 = glu_discrete(b1);
    CHECK(g1.num_vertices == 1);
    CHECK(edge_multiset(g1) == std::multiset<std::pair<int, int>>{{0, 0}});

    // Cherry: the second leaf glues to the center, the first to leaf 0.
    LabeledBinaryTree b2;
    b2.num_vertices = 4;
    b2.edges = {{0, 3}, {3, 1}, {3, 2}};
    b2.marked_leaves = {0, 1, 2};
    const Looptree g2 = glu_discrete(b2);
    CHECK(g2.num_vertices == 2);
    int self_loops = 0, cross = 0;
    for (const auto& [u, v] : g2.edges) (u == v ? self_loops : cross)++;
    CHECK(self_loops == 1);
    CHECK(cross == 2);

    // Only the base mark: nothing is identified.
    const Looptree unglued = glu_discrete(b2, 1);
    CHECK(unglued.num_vertices == 4);
    CHECK(unglued.edges.size() == 3);

    LabeledBinaryTree bad = b2;
    bad.marked_leaves = {0, 3, 2};
    CHECK_THROWS_AS(glu_discrete(bad), std::invalid_argument);
}

TEST_CASE("modified looptree") {
    const PlaneTree t1 = PlaneTree::single_vertex(true);
    const Looptree m1 = modified_loop(t1);
    CHECK(m1.num_vertices == 2);
    CHECK(m1.edges.size() == 1);
    CHECK(m1.marks.count("g") == 1);
    CHECK(m1.marks.count("d") == 1);

    CHECK_THROWS_AS(modified_loop(PlaneTree::path(3)), std::invalid_argument);

    Rng rng(32);
    for (int rep = 0; rep < 30; ++rep) {
        const PlaneTree t = grow_lpam_tree(t1, 2 + static_cast<int>(rng.below(20)), 0.0, rng);
        const Looptree cut = modified_loop(t);
        const Looptree merged = loop_planted(t);
        CHECK(cut.num_vertices == merged.num_vertices + 1);
        CHECK(cut.edges.size() == merged.edges.size());
        // Splitting a vertex can only increase distances between its sides.
        const GraphCSR csr = csr_of(cut);
        const auto dist = bfs_distances(csr, cut.marks.at("g"));
        CHECK(dist[cut.marks.at("d")] >= 0);
    }
}

TEST_CASE("gluing parts onto a seed") {
    Rng rng(33);
    for (int seed_size = 2; seed_size <= 5; ++seed_size) {
        for (const auto& [code, seed] : enumerate_abstract_trees(seed_size)) {
            const std::vector<Looptree> trivial(seed.corner_count(),
                                                modified_loop(PlaneTree::single_vertex(true)));
            CHECK(multigraphs_isomorphic(glue_on_seed(seed, trivial), loop(seed)));
        }
    }
    // Reconstruction along decomposed growth.
    for (int rep = 0; rep < 150; ++rep) {
        const int seed_size = 2 + static_cast<int>(rng.below(4));
        const PlaneTree seed = rep % 2 == 0 ? PlaneTree::path(seed_size) : PlaneTree::star(seed_size);
        const int n = seed.size() + static_cast<int>(rng.below(26));
        const SeedDecomposition sd = grow_via_seed_decomposition(seed, n, rng);
        std::vector<Looptree> parts;
        parts.reserve(sd.parts.size());
        for (const PlaneTree& p : sd.parts) parts.push_back(modified_loop(p));
        CHECK(multigraphs_isomorphic(glue_on_seed(seed, parts), loop(sd.tree)));
    }
    // Arity and mark errors.
    const PlaneTree edge = PlaneTree::path(2);
    CHECK_THROWS_AS(glue_on_seed(edge, {}), std::invalid_argument);
    std::vector<Looptree> unmarked(2);
    unmarked[0].num_vertices = unmarked[1].num_vertices = 1;
    CHECK_THROWS_AS(glue_on_seed(edge, unmarked), std::invalid_argument);
}

TEST_CASE("shortest-path metric examples") {
    Looptree two_cycle;
    two_cycle.num_vertices = 2;
    two_cycle.add_edge(0, 1);
    two_cycle.add_edge(0, 1);
    const FiniteMetricSpace m2 = shortest_path_metric(two_cycle);
    CHECK(m2.d(0, 1) == 1);

    Looptree four_cycle;
    four_cycle.num_vertices = 4;
    for (int i = 0; i < 4; ++i) four_cycle.add_edge(i, (i + 1) % 4);
    const FiniteMetricSpace m4 = shortest_path_metric(four_cycle);
    CHECK(m4.d(0, 2) == 2);
    m4.validate();  // triangle inequality across all triples

    Looptree disconnected;
    disconnected.num_vertices = 2;
    CHECK_THROWS_AS(shortest_path_metric(disconnected), std::invalid_argument);
}

TEST_CASE("canonical multigraph codes") {
    // Relabeled copies are isomorphic.
    Looptree a;
    a.num_vertices = 3;
    a.add_edge(0, 1);
    a.add_edge(0, 1);
    a.add_edge(1, 2);
    a.add_edge(2, 2);
    Looptree b;
    b.num_vertices = 3;
    b.add_edge(2, 1);
    b.add_edge(1, 2);
    b.add_edge(1, 0);
    b.add_edge(0, 0);
    CHECK(multigraphs_isomorphic(a, b));

    // A double edge is not two self-loops.
    Looptree c;
    c.num_vertices = 3;
    c.add_edge(0, 1);
    c.add_edge(1, 1);
    c.add_edge(1, 2);
    c.add_edge(2, 2);
    CHECK_FALSE(multigraphs_isomorphic(a, c));

    CHECK_FALSE(multigraphs_isomorphic(loop(PlaneTree::path(4)), loop(PlaneTree::star(4))));

    // Marked comparison distinguishes mark placement.
    Looptree m1 = a, m2 = b;
    m1.marks["g"] = 0;
    m2.marks["g"] = 0;  // corresponds to vertex 2 of m1 under the isomorphism
    CHECK(multigraphs_isomorphic(m1, m2));
    CHECK_FALSE(multigraphs_isomorphic(m1, m2, true));
}

TEST_CASE("looptree diameter agrees with BFS") {
    Rng rng(34);
    for (int rep = 0; rep < 60; ++rep) {
        const bool planted = rep % 2 == 0;
        const PlaneTree seed = planted ? PlaneTree::single_vertex(true) : PlaneTree::path(2);
        const PlaneTree t = grow_lpam_tree(seed, 2 + static_cast<int>(rng.below(50)), 0.0, rng);
        CHECK(looptree_diameter(t) == diameter_by_bfs(loop(t)));
    }
}

TEST_CASE("looptree json round trip") {
    Looptree g = loop(PlaneTree::star(4));
    g.marks["x"] = 1;
    const Looptree back = looptree_from_json(looptree_to_json(g));
    CHECK(back.num_vertices == g.num_vertices);
    CHECK(edge_multiset(back) == edge_multiset(g));
    CHECK(back.marks == g.marks);
}
