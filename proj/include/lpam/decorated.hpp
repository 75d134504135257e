#pragma once

#include "lpam/canonical.hpp"
#include "lpam/plane_tree.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace lpam {

// Unordered tree with positive integer vertex labels. Vertices are kept in
// the canonical order of the unlabeled shape, so two decorated trees with
// the same shape have identical adjacency.
struct DecoratedTree {
    TreeAdjacency adj;
    std::vector<int> labels;

    int size() const { return static_cast<int>(labels.size()); }
    int weight() const {
        int w = 0;
        for (int l : labels) w += l;
        return w;
    }
    std::string code() const { return unrooted_code(adj, &labels); }
    std::string shape_code() const { return unrooted_code(adj, nullptr); }
};

DecoratedTree make_decorated(const TreeAdjacency& adj, std::vector<int> labels);
DecoratedTree decorated_single(int label);
DecoratedTree decorated_from_plane(const PlaneTree& shape, const std::vector<int>& labels_by_vertex);

// JSON form {"label": int, "children": [...]} (an arbitrary rooting).
std::string decorated_to_json(const DecoratedTree& t);
DecoratedTree decorated_from_json(const std::string& text);

// Strict precedence: smaller weight with size no larger, or equal weight
// with smaller size.
inline bool strictly_precedes(int w1, int s1, int w2, int s2) {
    return (w1 < w2 && s1 <= s2) || (w1 == w2 && s1 < s2);
}
inline bool strictly_precedes(const DecoratedTree& a, const DecoratedTree& b) {
    return strictly_precedes(a.weight(), a.size(), b.weight(), b.size());
}

struct DecoratedOrderUniverse {
    // Sorted by (weight, size, code); every linear extension of the strict
    // order keeps lower elements first under this sort.
    std::vector<DecoratedTree> elements;
    std::map<std::string, int> index_of;

    bool precedes(int i, int j) const { return strictly_precedes(elements[i], elements[j]); }
    int require(const DecoratedTree& t) const;
};

// Every decorated tree with weight <= w_max and size <= k_max, once per
// label-preserving isomorphism class. Guard: w_max, k_max <= 6.
DecoratedOrderUniverse enumerate_decorated(int w_max, int k_max);

// The one-step growth expansion of the observable indexed by tau as a
// combination over strictly smaller decorated trees: each vertex with
// label l >= 2 contributes l(l-1) to the tree with that label decremented;
// each label-1 leaf w with neighbor a contributes 1 with a's label raised,
// 2*l(a) with it kept, and l(a)(l(a)-1) with it lowered (when l(a) >= 2).
std::vector<std::pair<DecoratedTree, int64_t>> reduction_contributions(const DecoratedTree& tau);

// Downward closure of tau under reduction_contributions, tau included.
DecoratedOrderUniverse reduction_closure(const DecoratedTree& tau);

}  // namespace lpam
