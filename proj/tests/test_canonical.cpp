#include "lpam/canonical.hpp"
#include "lpam/labeled_tree.hpp"
#include "lpam/enumerate.hpp"
#include "lpam/growth.hpp"
#include "lpam/rng.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace lpam;

namespace {
// Rebuilds t with every child list independently shuffled.
PlaneTree shuffled_plane(const PlaneTree& t, Rng& rng) {
    PlaneTree out = PlaneTree::single_vertex(t.planted());
    std::vector<Vertex> image(t.size(), -1);
    image[t.root()] = 0;
    std::vector<Vertex> stack{t.root()};
    while (!stack.empty()) {
        const Vertex v = stack.back();
        stack.pop_back();
        std::vector<Vertex> kids = t.children(v);
        for (size_t i = kids.size(); i > 1; --i) std::swap(kids[i - 1], kids[rng.below(i)]);
        for (Vertex c : kids) {
            image[c] = out.attach_leaf(image[v]);
            stack.push_back(c);
        }
    }
    return out;
}
}  // namespace

TEST_CASE("canonical code is invariant under plane reordering") {
    Rng rng(21);
    for (int rep = 0; rep < 60; ++rep) {
        const PlaneTree t = grow_lpam_tree(PlaneTree::path(2), 3 + static_cast<int>(rng.below(20)), 0.0, rng);
        const AbstractTreeCode code = canonical_code(t);
        for (int s = 0; s < 4; ++s) CHECK(canonical_code(shuffled_plane(t, rng)) == code);
    }
}

TEST_CASE("non-isomorphic trees get distinct codes") {
    CHECK(canonical_code(PlaneTree::path(4)) != canonical_code(PlaneTree::star(4)));
    // Two plane orderings of the same abstract tree share a code; the
    // cherry and the rooted path even coincide as unrooted trees.
    CHECK(canonical_code(parse_tree("(()(()))", false)) == canonical_code(parse_tree("((())())", false)));
    CHECK(canonical_code(parse_tree("(()())", false)) == canonical_code(parse_tree("((()))", false)));
}

TEST_CASE("abstract tree enumeration counts") {
    const int expected[] = {0, 1, 1, 1, 2, 3, 6, 11, 23, 47, 106};
    for (int n = 1; n <= 10; ++n) {
        CHECK(enumerate_abstract_trees(n).size() == static_cast<size_t>(expected[n]));
    }
    CHECK_THROWS_AS(enumerate_abstract_trees(0), GuardError);
    CHECK_THROWS_AS(enumerate_abstract_trees(11), GuardError);

    // The two 4-vertex trees are the path and the star.
    const auto four = enumerate_abstract_trees(4);
    std::set<AbstractTreeCode> codes;
    for (const auto& [code, rep] : four) codes.insert(code);
    CHECK(codes.count(canonical_code(PlaneTree::path(4))) == 1);
    CHECK(codes.count(canonical_code(PlaneTree::star(4))) == 1);
}

TEST_CASE("leaf-labeled codes distinguish labelings") {
    // Two cherries differing in which leaf is the odd one out.
    LabeledBinaryTree a, b;
    a.num_vertices = b.num_vertices = 5;
    // center 0; leaves 1..3 hang off 0 and 4; a: leaf-2 deep, b: leaf-3 deep
    a.edges = {{0, 1}, {0, 4}, {4, 2}, {4, 3}};
    a.marked_leaves = {1, 2, 3};
    b.edges = {{0, 2}, {0, 4}, {4, 1}, {4, 3}};
    b.marked_leaves = {1, 2, 3};
    CHECK(a.code() != b.code());

    LabeledBinaryTree c = a;
    std::swap(c.edges[2], c.edges[3]);  // same tree, edge order permuted
    CHECK(c.code() == a.code());
}
