#pragma once

#include "lpam/labeled_tree.hpp"
#include "lpam/looptree.hpp"
#include "lpam/plane_tree.hpp"
#include "lpam/rng.hpp"

#include <vector>

namespace lpam {

// Uniform / weighted edge-splitting growth of leaf-labeled binary trees.
// Starts from the single edge with leaves 0 and 1; each step splits an
// edge with a middle vertex and hangs the next labeled leaf off it.
class BinaryGrower {
public:
    enum class Mode { Remy, Ford, FordModified };

    BinaryGrower(Mode mode, double alpha);

    void step(Rng& rng);

    // Current tree; tree index n means n+1 labeled leaves (steps_done()+1).
    LabeledBinaryTree tree() const;
    int steps_done() const { return static_cast<int>(leaf_of_label_.size()) - 2; }
    int edge_count() const { return static_cast<int>(edge_a_.size()); }

    // Geodesic class of each edge: the unique i >= 1 whose geodesic from
    // leaf i to the span of leaves 0..i-1 contains it.
    const std::vector<int>& edge_classes() const { return edge_class_; }

    // Splits a specific edge (used by the coupled grower); returns the ids
    // of the two halves and the pendant edge, in that order: the first half
    // keeps the id and the a-endpoint of the split edge.
    struct SplitIds {
        int first_half, second_half, pendant;
        int mid_vertex, leaf_vertex;
    };
    SplitIds split_edge(int edge_id, int pendant_class);

    int sample_edge(Rng& rng) const;

    int endpoint_a(int e) const { return edge_a_[e]; }
    int endpoint_b(int e) const { return edge_b_[e]; }

private:
    Mode mode_;
    double alpha_;
    std::vector<int> edge_a_, edge_b_;  // oriented endpoints per edge id
    std::vector<int> edge_class_;
    std::vector<int> leaf_of_label_;
    std::vector<char> is_labeled_leaf_;            // true for leaves 1,2,... (not leaf 0)
    std::vector<std::vector<int>> class_edges_;    // class -> edge ids
    std::vector<int> pos_in_class_;
    std::vector<int> pool_[2];                     // 0: weight alpha, 1: weight 1-alpha
    std::vector<int> pool_of_, pos_in_pool_;
    int num_vertices_ = 0;

    bool leaf_adjacent(int e) const {
        return is_labeled_leaf_[edge_a_[e]] || is_labeled_leaf_[edge_b_[e]];
    }
    void pool_insert(int e);
    void pool_remove(int e);
    void class_insert(int e, int cls);
    void class_remove(int e);
};

// B_1..B_n from uniform edge splits (B_n has n+1 labeled leaves).
std::vector<LabeledBinaryTree> grow_remy(int n, Rng& rng);

// F_1..F_n with leaf edges (edges meeting a labeled leaf other than leaf 0)
// weighted 1-alpha and the remaining edges weighted alpha. The modified
// variant re-draws the split edge uniformly on the geodesic class of the
// selected edge.
std::vector<LabeledBinaryTree> grow_ford(int n, double alpha, bool modified, Rng& rng);

// Shared-choice coupling between uniform edge splitting and corner growth
// of a planted plane tree: the looptree of the plane state and the gluing
// of the binary state stay equal through a maintained bijection.
class CoupledGrower {
public:
    CoupledGrower();
    void step(Rng& rng);
    int size() const { return plane_.size(); }  // vertices of the plane state
    const PlaneTree& plane_tree() const { return plane_; }
    LabeledBinaryTree binary_tree() const { return grower_.tree(); }

    // Checks that the maintained edge-key -> binary-vertex map induces a
    // multigraph isomorphism between loop(plane) and glu(binary).
    bool coupling_isomorphic() const;

private:
    BinaryGrower grower_;
    PlaneTree plane_;
    // Corner handle: the corner after half-edge `after` at `vertex`
    // (-1 = parent/plant half-edge). Handles stay valid across grafts.
    struct CornerHandle {
        Vertex vertex;
        Vertex after;
    };
    std::vector<CornerHandle> corner_of_edge_;  // by binary edge id
    std::vector<int> binary_vertex_of_key_;     // by tree-edge key
    int slot_of(const CornerHandle& h) const;
};

struct CoupledGrowth {
    std::vector<LabeledBinaryTree> binary_states;
    std::vector<PlaneTree> plane_states;
    bool all_steps_isomorphic = true;
};

CoupledGrowth grow_coupled(int n, Rng& rng);

}  // namespace lpam
