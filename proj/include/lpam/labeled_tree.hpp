#pragma once

#include "lpam/canonical.hpp"

#include <cstdint>
#include <vector>

namespace lpam {

// Discrete tree with an ordered list of distinct marked leaves
// x_0, x_1, ... (for the uniform-split growth chains these are the leaves
// in creation order and the tree is binary: every vertex has degree <= 3).
struct LabeledBinaryTree {
    int num_vertices = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> marked_leaves;

    TreeAdjacency adjacency() const {
        TreeAdjacency adj(num_vertices);
        for (const auto& [u, v] : edges) {
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
        return adj;
    }

    bool is_binary() const {
        std::vector<int> deg(num_vertices, 0);
        for (const auto& [u, v] : edges) {
            ++deg[u];
            ++deg[v];
        }
        for (int d : deg) {
            if (d > 3) return false;
        }
        return true;
    }

    // Canonical code respecting the leaf labels (x_i is "leaf i").
    std::string code() const {
        std::vector<int> leaf_label(num_vertices, -1);
        for (size_t i = 0; i < marked_leaves.size(); ++i) leaf_label[marked_leaves[i]] = static_cast<int>(i);
        return leaf_labeled_code(adjacency(), leaf_label);
    }
};

}  // namespace lpam
