#pragma once

#include "lpam/labeled_tree.hpp"
#include "lpam/metric.hpp"
#include "lpam/plane_tree.hpp"

#include <map>
#include <string>
#include <vector>

namespace lpam {

// Finite multigraph with unit-length edges (self-loops and parallel edges
// allowed) and optional named marked vertices.
struct Looptree {
    int num_vertices = 0;
    std::vector<std::pair<int, int>> edges;
    std::map<std::string, int> marks;

    void add_edge(int u, int v) {
        if (u > v) std::swap(u, v);
        edges.emplace_back(u, v);
    }
    int edge_count() const { return static_cast<int>(edges.size()); }
};

std::string looptree_to_json(const Looptree& g);
Looptree looptree_from_json(const std::string& text);

struct LoopResult {
    Looptree graph;
    // Looptree vertex per tree edge. Edges are keyed by their child vertex;
    // the plant half-edge is keyed by the root id. -1 where there is no edge.
    std::vector<int> vertex_of_edge_key;
    // One cycle per tree vertex (looptree vertex ids in cyclic order).
    std::vector<std::vector<int>> cycles;
};

// Replaces each vertex by a cycle of its degree, cycles glued along the
// tree structure. For a planted tree the plant half-edge contributes a
// looptree vertex like any edge.
LoopResult loop_with_map(const PlaneTree& t);
Looptree loop(const PlaneTree& t);

// Looptree of a planted tree, built literally: complete the half-edge with
// a new leaf, take the looptree, and drop the self-loop around that leaf.
Looptree loop_planted(const PlaneTree& t);

// loop_planted with the half-edge vertex split in two; the endpoint on the
// corner following the plant is marked "g", the one preceding it "d".
Looptree modified_loop(const PlaneTree& t);

struct GluResult {
    Looptree graph;
    std::vector<int> class_of;  // quotient class per tree vertex
};

// Identifies each marked leaf x_i (i >= 1) with the vertex of
// Span(x_0..x_{i-1}) closest to it; the quotient multigraph keeps one
// unit edge per tree edge. `num_marked` limits the identifications to the
// first so many marks (-1 = all).
GluResult glu_with_classes(const LabeledBinaryTree& bt, int num_marked = -1);
Looptree glu_discrete(const LabeledBinaryTree& bt, int num_marked = -1);

// Assembles the looptree of a seed with planted trees grown in its corners
// from the parts' modified looptrees: midpoints of seed edges become shared
// vertices, part i's marks g/d land on the midpoints of the edges bounding
// corner i (corners enumerated vertex-ascending, slot-ascending).
Looptree glue_on_seed(const PlaneTree& seed, const std::vector<Looptree>& parts);

struct GraphCSR {
    int n = 0;
    std::vector<int> offsets;
    std::vector<int> neighbors;
};

GraphCSR csr_of(const Looptree& g);
std::vector<int> bfs_distances(const GraphCSR& g, int src);
std::vector<int> multi_source_bfs_distances(const GraphCSR& g, const std::vector<int>& sources);

// Full unit-weight shortest-path table (small graphs; for large ones use
// bfs_distances per center). Marked vertices carry over.
FiniteMetricSpace shortest_path_metric(const Looptree& g);

// Exact diameter of loop(t): dynamic programming over the cycle tree
// (every edge of a looptree lies on exactly one cycle).
int64_t looptree_diameter(const PlaneTree& t);

// Exact diameter by all-pairs BFS; intended for small graphs.
int diameter_by_bfs(const Looptree& g);

// Canonical form under multigraph isomorphism: iterated degree/multiplicity
// refinement plus individualization. With use_marks, marked vertices must
// correspond by name.
std::string canonical_multigraph_code(const Looptree& g, bool use_marks = false);

inline bool multigraphs_isomorphic(const Looptree& a, const Looptree& b, bool use_marks = false) {
    if (a.num_vertices != b.num_vertices || a.edges.size() != b.edges.size()) return false;
    return canonical_multigraph_code(a, use_marks) == canonical_multigraph_code(b, use_marks);
}

}  // namespace lpam
