#pragma once

#include "lpam/canonical.hpp"
#include "lpam/plane_tree.hpp"

#include <map>
#include <vector>

namespace lpam {

// All plane trees with n vertices (Catalan(n-1) of them).
std::vector<PlaneTree> all_plane_trees(int n);

// The unlabeled trees on n vertices, each once, keyed by canonical code
// with a plane representative. Guard: 1 <= n <= 10.
std::map<AbstractTreeCode, PlaneTree> enumerate_abstract_trees(int n);

}  // namespace lpam
