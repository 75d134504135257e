#pragma once

#include "lpam/canonical.hpp"
#include "lpam/labeled_tree.hpp"
#include "lpam/plane_tree.hpp"
#include "lpam/rational.hpp"

#include <map>
#include <string>

namespace lpam {

// Exact law on isomorphism classes; keys are canonical codes, masses exact
// rationals summing to 1, with one representative kept per class.
struct ExactDistribution {
    std::map<AbstractTreeCode, Rat> mass;
    std::map<AbstractTreeCode, PlaneTree> reps;

    Rat total() const;
};

std::string distribution_to_json(const std::map<std::string, Rat>& mass);

// Law of the degree-proportional attachment chain started from `seed`
// (non-planted), expanded exactly and merged by canonical code.
// Guard: n <= |seed| + 6.
ExactDistribution exact_step_distribution(const PlaneTree& seed, int n);

Rat total_variation(const std::map<std::string, Rat>& a, const std::map<std::string, Rat>& b);

// Exact law of the plane chain (vertex weight degree + delta, then a
// uniform corner), on plane states keyed by serialization.
struct PlaneExactLaw {
    bool planted = false;
    std::map<std::string, Rat> states;
    std::map<std::string, PlaneTree> reps;
};

PlaneExactLaw exact_plane_lpam_law(const PlaneTree& seed, int n, const Rat& delta);

// Pushforward onto looptree multigraph-isomorphism classes.
std::map<std::string, Rat> loop_law_from_plane(const PlaneExactLaw& law);

// Exact law of the edge-splitting chains after `steps` splits, on
// leaf-labeled isomorphism classes.
struct BinaryExactLaw {
    std::map<std::string, Rat> states;
    std::map<std::string, LabeledBinaryTree> reps;
};

BinaryExactLaw exact_remy_law(int steps);
BinaryExactLaw exact_ford_law(int steps, const Rat& alpha, bool modified);

std::map<std::string, Rat> glu_law_from_binary(const BinaryExactLaw& law);

// Geodesic class per edge of a labeled tree (class i = edges on the path
// from leaf i to the span of leaves 0..i-1); edge order follows bt.edges.
std::vector<int> geodesic_edge_classes(const LabeledBinaryTree& bt);

}  // namespace lpam
