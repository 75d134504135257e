#pragma once

#include "lpam/plane_tree.hpp"
#include "lpam/rng.hpp"

#include <cstdint>
#include <vector>

namespace lpam {

struct GrowthTrajectory {
    PlaneTree seed;
    double delta = 0.0;
    uint64_t rng_seed = 0;
    std::vector<Corner> choices;
    PlaneTree final_tree;

    // Replays the first (n - |seed|) grafts.
    PlaneTree state_at(int n) const;
};

// Grows a plane tree by repeated grafting: a vertex is chosen with
// probability proportional to degree + delta, then a corner of that vertex
// uniformly. At delta = 0 this makes every corner equally likely.
PlaneTree grow_lpam_tree(PlaneTree seed, int n, double delta, Rng& rng,
                         std::vector<Corner>* choices = nullptr);

GrowthTrajectory grow_lpam(const PlaneTree& seed, int n, double delta, uint64_t stream_seed);

// Max degree after each graft, indexed by tree size |seed|..n.
std::vector<int> max_degree_profile(const GrowthTrajectory& traj);

struct UrnState {
    std::vector<int64_t> counts;
    int64_t total() const;
};

// N-color urn starting with one ball of each color; each draw returns the
// ball plus two more of its color.
UrnState polya_sample(int64_t draws, int colors, Rng& rng);

struct SeedDecomposition {
    PlaneTree tree;
    UrnState urn;
    std::vector<PlaneTree> parts;  // planted trees, one per seed corner
};

// Grows to n vertices by the urn decomposition: corner i of the seed
// receives an independently grown planted tree with (urn count + 1)/2
// vertices, glued root-first into the corner.
SeedDecomposition grow_via_seed_decomposition(const PlaneTree& seed, int n, Rng& rng);

// Splices the child subtrees of P's root into corner c of T, merging P's
// root with the corner's vertex.
void glue_planted_into_corner(PlaneTree& T, const Corner& c, const PlaneTree& P);

}  // namespace lpam
