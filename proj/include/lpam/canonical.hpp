#pragma once

#include "lpam/plane_tree.hpp"

#include <string>
#include <vector>

namespace lpam {

// Canonical string form of the underlying unordered unlabeled tree
// (AHU codes rooted at the centroid or centroid edge). Equal codes iff the
// underlying graphs are isomorphic.
using AbstractTreeCode = std::string;

using TreeAdjacency = std::vector<std::vector<int>>;

TreeAdjacency adjacency_of(const PlaneTree& t);

// One or two centroids of an unrooted tree.
std::vector<int> tree_centroids(const TreeAdjacency& adj);

// AHU code of the tree rooted at `root`, entering from `from` (-1 for none).
// When `labels` is non-null each vertex code carries its integer label, so
// equal codes mean label-preserving isomorphism.
std::string rooted_code(const TreeAdjacency& adj, int root, int from, const std::vector<int>* labels);

// Canonical code of an unrooted tree, optionally vertex-labeled.
std::string unrooted_code(const TreeAdjacency& adj, const std::vector<int>* labels);

AbstractTreeCode canonical_code(const PlaneTree& t);

// Canonical vertex order for the unlabeled shape: relabeling by this
// permutation gives identical adjacency for isomorphic shapes.
// Returns new-position -> old-vertex.
std::vector<int> canonical_shape_order(const TreeAdjacency& adj);

// Canonical code of a tree whose leaves carry distinct labels (>= 0,
// -1 for internal vertices): rooted at the leaf labeled 0.
std::string leaf_labeled_code(const TreeAdjacency& adj, const std::vector<int>& leaf_label);

}  // namespace lpam
