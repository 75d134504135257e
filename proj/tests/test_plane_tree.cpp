#include "lpam/growth.hpp"
#include "lpam/plane_tree.hpp"
#include "lpam/rng.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <fstream>
#include <set>

using namespace lpam;

TEST_CASE("parse and serialize basics") {
    const PlaneTree single = parse_tree("()", false);
    CHECK(single.size() == 1);
    CHECK(single.edge_count() == 0);

    const PlaneTree cherry = parse_tree("(()())", false);
    CHECK(cherry.size() == 3);
    CHECK(cherry.degree(0) == 2);
    CHECK(cherry.degree(1) == 1);
    CHECK(cherry.degree(2) == 1);

    const PlaneTree path3 = parse_tree("((()))", false);
    CHECK(path3.size() == 3);
    CHECK(path3.corner_count() == 4);

    CHECK(serialize_tree(PlaneTree::single_vertex(false)) == "()");
    CHECK(serialize_tree(PlaneTree::path(3)) == "((()))");
    CHECK(serialize_tree(PlaneTree::star(4)) == "(()()())");
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(parse_tree("", false), ParseError);
    CHECK_THROWS_AS(parse_tree("(()", false), ParseError);
    CHECK_THROWS_AS(parse_tree("())", false), ParseError);
    CHECK_THROWS_AS(parse_tree("()()", false), ParseError);
    CHECK_THROWS_AS(parse_tree("(a)", false), ParseError);
    try {
        parse_tree("(()", false);
    } catch (const ParseError& e) {
        CHECK(e.position() == 3);
    }
}

TEST_CASE("round trip under random growth") {
    Rng rng(11);
    for (int rep = 0; rep < 50; ++rep) {
        const bool planted = rep % 2 == 0;
        const PlaneTree seed = planted ? PlaneTree::single_vertex(true) : PlaneTree::path(2);
        const PlaneTree t = grow_lpam_tree(seed, 2 + static_cast<int>(rng.below(40)), 0.0, rng);
        // Round trips reproduce the tree up to vertex renaming; the
        // serialization itself is id-independent.
        const PlaneTree back = parse_tree(serialize_tree(t), t.planted());
        CHECK(serialize_tree(back) == serialize_tree(t));
        CHECK(back.planted() == t.planted());
        CHECK(back.size() == t.size());
        const PlaneTree from_json = tree_from_json(tree_to_json(t));
        CHECK(serialize_tree(from_json) == serialize_tree(t));
        CHECK(from_json.planted() == t.planted());
    }
}

TEST_CASE("degree sums and corner counts") {
    Rng rng(12);
    for (int rep = 0; rep < 40; ++rep) {
        const bool planted = rep % 2 == 0;
        const PlaneTree seed = planted ? PlaneTree::single_vertex(true) : PlaneTree::path(2);
        const PlaneTree t = grow_lpam_tree(seed, 2 + static_cast<int>(rng.below(30)), 0.0, rng);
        int total = 0;
        for (Vertex v = 0; v < t.size(); ++v) total += t.degree(v);
        CHECK(total == (planted ? 2 * t.size() - 1 : 2 * t.size() - 2));
        CHECK(t.corner_count() == total);
    }
}

TEST_CASE("graft examples") {
    // The planted single vertex has one corner; grafting there is forced.
    PlaneTree planted = PlaneTree::single_vertex(true);
    CHECK(planted.corner_count() == 1);
    const PlaneTree two = graft(planted, Corner{0, 0});
    CHECK(two.size() == 2);
    CHECK(two.corner_count() == 3);
    CHECK(two.planted());

    const PlaneTree path3 = PlaneTree::path(3);
    for (const Corner& c : path3.all_corners()) {
        const PlaneTree grown = graft(path3, c);
        CHECK(grown.size() == 4);
        int total = 0;
        for (Vertex v = 0; v < 4; ++v) total += grown.degree(v);
        CHECK(total == 6);
        CHECK(grown.corner_count() == path3.corner_count() + 2);
    }
    CHECK_THROWS_AS(graft(path3, Corner{1, 5}), std::invalid_argument);
    CHECK_THROWS_AS(graft(path3, Corner{7, 0}), std::invalid_argument);
}

namespace {
// Brute-force span: union of vertices on BFS paths between all pairs.
std::set<Vertex> span_oracle(const PlaneTree& t, const std::vector<Vertex>& vs) {
    std::vector<std::vector<Vertex>> adj(t.size());
    for (Vertex v = 0; v < t.size(); ++v) {
        for (Vertex c : t.children(v)) {
            adj[v].push_back(c);
            adj[c].push_back(v);
        }
    }
    std::set<Vertex> out;
    for (Vertex a : vs) {
        for (Vertex b : vs) {
            std::vector<Vertex> parent(t.size(), -1), queue{a};
            std::vector<char> seen(t.size(), 0);
            seen[a] = 1;
            for (size_t h = 0; h < queue.size(); ++h) {
                for (Vertex u : adj[queue[h]]) {
                    if (!seen[u]) {
                        seen[u] = 1;
                        parent[u] = queue[h];
                        queue.push_back(u);
                    }
                }
            }
            for (Vertex w = b; w != -1; w = parent[w]) {
                out.insert(w);
                if (w == a) break;
            }
        }
    }
    return out;
}
}  // namespace

TEST_CASE("span examples and oracle") {
    const PlaneTree path5 = PlaneTree::path(5);
    CHECK(span(path5, {2}) == std::vector<Vertex>{2});
    CHECK(span(path5, {0, 4}) == std::vector<Vertex>{0, 1, 2, 3, 4});

    const PlaneTree star4 = PlaneTree::star(4);
    CHECK(span(star4, {1, 3}) == std::vector<Vertex>{0, 1, 3});

    CHECK_THROWS_AS(span(path5, {9}), std::invalid_argument);
    CHECK_THROWS_AS(span(path5, {}), std::invalid_argument);

    Rng rng(13);
    for (int rep = 0; rep < 30; ++rep) {
        const PlaneTree t = grow_lpam_tree(PlaneTree::path(2), 12, 0.0, rng);
        std::vector<Vertex> vs;
        for (Vertex v = 0; v < t.size(); ++v) {
            if (rng.below(3) == 0) vs.push_back(v);
        }
        if (vs.empty()) vs.push_back(0);
        const auto got = span(t, vs);
        const auto want = span_oracle(t, vs);
        CHECK(std::set<Vertex>(got.begin(), got.end()) == want);
    }
}

TEST_CASE("seed names") {
    CHECK(seed_from_name("path4") == PlaneTree::path(4));
    CHECK(seed_from_name("star5") == PlaneTree::star(5));
    CHECK(seed_from_name("planted").planted());
    CHECK(seed_from_name("((()))") == PlaneTree::path(3));
    CHECK_THROWS(seed_from_name("blob"));
    {
        const std::string path = "/tmp/lpam_seed_test.txt";
        std::ofstream(path) << "(()())\n";
        CHECK(seed_from_name("@" + path) == parse_tree("(()())", false));
        CHECK_THROWS(seed_from_name("@/tmp/definitely-missing-seed-file"));
    }
}
