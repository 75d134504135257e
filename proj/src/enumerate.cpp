#include "lpam/enumerate.hpp"

namespace lpam {

namespace {
// Copies `sub` under vertex `at` of `t` as the first child.
void prepend_subtree(PlaneTree& t, Vertex at, const PlaneTree& sub) {
    std::vector<Vertex> image(sub.size(), -1);
    std::vector<Vertex> stack{sub.root()};
    std::vector<Vertex> order;
    while (!stack.empty()) {
        const Vertex v = stack.back();
        stack.pop_back();
        order.push_back(v);
        const auto& cs = sub.children(v);
        for (auto it = cs.rbegin(); it != cs.rend(); ++it) stack.push_back(*it);
    }
    for (Vertex v : order) {
        if (v == sub.root()) {
            image[v] = t.attach_leaf_at(at, 0);
        } else {
            image[v] = t.attach_leaf(image[sub.parent(v)]);
        }
    }
}
}  // namespace

std::vector<PlaneTree> all_plane_trees(int n) {
    if (n < 1) throw std::invalid_argument("all_plane_trees: need n >= 1");
    // trees(n) = first-child subtree of size k joined to trees(n-k)
    // whose root supplies the remaining children.
    static std::vector<std::vector<PlaneTree>> memo;  // memo[k] = trees on k vertices
    if (memo.empty()) memo.push_back({});             // index 0 unused
    for (int m = static_cast<int>(memo.size()); m <= n; ++m) {
        std::vector<PlaneTree> result;
        if (m == 1) {
            result.push_back(PlaneTree::single_vertex(false));
        } else {
            for (int k = 1; k <= m - 1; ++k) {
                for (const PlaneTree& first : memo[k]) {
                    for (const PlaneTree& rest : memo[m - k]) {
                        PlaneTree t = rest;
                        prepend_subtree(t, t.root(), first);
                        result.push_back(std::move(t));
                    }
                }
            }
        }
        memo.push_back(std::move(result));
    }
    return memo[n];
}

std::map<AbstractTreeCode, PlaneTree> enumerate_abstract_trees(int n) {
    if (n < 1 || n > 10) throw GuardError("enumerate_abstract_trees: n must be in [1, 10]");
    std::map<AbstractTreeCode, PlaneTree> out;
    for (const PlaneTree& t : all_plane_trees(n)) {
        out.emplace(canonical_code(t), t);
    }
    return out;
}

}  // namespace lpam
