#include "lpam/binary_growth.hpp"

#include <algorithm>

namespace lpam {

BinaryGrower::BinaryGrower(Mode mode, double alpha) : mode_(mode), alpha_(alpha) {
    if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("BinaryGrower: alpha must be in [0, 1]");
    num_vertices_ = 2;
    leaf_of_label_ = {0, 1};
    is_labeled_leaf_ = {0, 1};  // leaf 0 is excluded from the 1-alpha weight class
    edge_a_ = {0};
    edge_b_ = {1};
    edge_class_ = {-1};
    pool_of_ = {-1};
    pos_in_pool_ = {-1};
    pos_in_class_ = {-1};
    class_edges_.assign(2, {});
    pool_insert(0);
    class_insert(0, 1);
}

void BinaryGrower::pool_insert(int e) {
    const int p = leaf_adjacent(e) ? 1 : 0;
    pool_of_[e] = p;
    pos_in_pool_[e] = static_cast<int>(pool_[p].size());
    pool_[p].push_back(e);
}

void BinaryGrower::pool_remove(int e) {
    const int p = pool_of_[e];
    const int pos = pos_in_pool_[e];
    const int last = pool_[p].back();
    pool_[p][pos] = last;
    pos_in_pool_[last] = pos;
    pool_[p].pop_back();
    pool_of_[e] = -1;
}

void BinaryGrower::class_insert(int e, int cls) {
    edge_class_[e] = cls;
    pos_in_class_[e] = static_cast<int>(class_edges_[cls].size());
    class_edges_[cls].push_back(e);
}

void BinaryGrower::class_remove(int e) {
    const int cls = edge_class_[e];
    const int pos = pos_in_class_[e];
    const int last = class_edges_[cls].back();
    class_edges_[cls][pos] = last;
    pos_in_class_[last] = pos;
    class_edges_[cls].pop_back();
}

int BinaryGrower::sample_edge(Rng& rng) const {
    if (mode_ == Mode::Remy) return static_cast<int>(rng.below(edge_a_.size()));
    const double w_leaf = (1.0 - alpha_) * static_cast<double>(pool_[1].size());
    const double w_other = alpha_ * static_cast<double>(pool_[0].size());
    const double total = w_leaf + w_other;
    if (total <= 0.0) {
        // Degenerate weights (alpha = 1 with no internal edge yet): fall
        // back to a uniform pick.
        return static_cast<int>(rng.below(edge_a_.size()));
    }
    const int p = (rng.real01() * total < w_leaf) ? 1 : 0;
    const auto& pool = pool_[p].empty() ? pool_[1 - p] : pool_[p];
    return pool[rng.index(pool.size())];
}

BinaryGrower::SplitIds BinaryGrower::split_edge(int edge_id, int pendant_class) {
    const int a = edge_a_[edge_id];
    const int b = edge_b_[edge_id];
    const int cls = edge_class_[edge_id];
    const int mid = num_vertices_++;
    const int leaf = num_vertices_++;
    is_labeled_leaf_.push_back(0);  // mid
    is_labeled_leaf_.push_back(1);  // new labeled leaf
    leaf_of_label_.push_back(leaf);

    SplitIds ids;
    ids.mid_vertex = mid;
    ids.leaf_vertex = leaf;
    ids.first_half = edge_id;
    pool_remove(edge_id);
    class_remove(edge_id);
    edge_b_[edge_id] = mid;  // (a, mid) keeps the id and the a endpoint

    ids.second_half = static_cast<int>(edge_a_.size());
    edge_a_.push_back(mid);
    edge_b_.push_back(b);
    edge_class_.push_back(-1);
    pool_of_.push_back(-1);
    pos_in_pool_.push_back(-1);
    pos_in_class_.push_back(-1);

    ids.pendant = static_cast<int>(edge_a_.size());
    edge_a_.push_back(mid);
    edge_b_.push_back(leaf);
    edge_class_.push_back(-1);
    pool_of_.push_back(-1);
    pos_in_pool_.push_back(-1);
    pos_in_class_.push_back(-1);

    class_edges_.emplace_back();  // room for the pendant's class
    pool_insert(ids.first_half);
    pool_insert(ids.second_half);
    pool_insert(ids.pendant);
    class_insert(ids.first_half, cls);
    class_insert(ids.second_half, cls);
    class_insert(ids.pendant, pendant_class);
    return ids;
}

void BinaryGrower::step(Rng& rng) {
    int e = sample_edge(rng);
    if (mode_ == Mode::FordModified) {
        const auto& geodesic = class_edges_[edge_class_[e]];
        e = geodesic[rng.index(geodesic.size())];
    }
    split_edge(e, steps_done() + 2);
}

LabeledBinaryTree BinaryGrower::tree() const {
    LabeledBinaryTree t;
    t.num_vertices = num_vertices_;
    t.edges.reserve(edge_a_.size());
    for (size_t e = 0; e < edge_a_.size(); ++e) t.edges.emplace_back(edge_a_[e], edge_b_[e]);
    t.marked_leaves = leaf_of_label_;
    return t;
}

std::vector<LabeledBinaryTree> grow_remy(int n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("grow_remy: need n >= 1");
    BinaryGrower grower(BinaryGrower::Mode::Remy, 0.5);
    std::vector<LabeledBinaryTree> out;
    out.push_back(grower.tree());
    for (int k = 2; k <= n; ++k) {
        grower.step(rng);
        out.push_back(grower.tree());
    }
    return out;
}

std::vector<LabeledBinaryTree> grow_ford(int n, double alpha, bool modified, Rng& rng) {
    if (n < 1) throw std::invalid_argument("grow_ford: need n >= 1");
    BinaryGrower grower(modified ? BinaryGrower::Mode::FordModified : BinaryGrower::Mode::Ford, alpha);
    std::vector<LabeledBinaryTree> out;
    out.push_back(grower.tree());
    for (int k = 2; k <= n; ++k) {
        grower.step(rng);
        out.push_back(grower.tree());
    }
    return out;
}

CoupledGrower::CoupledGrower()
    : grower_(BinaryGrower::Mode::Remy, 0.5), plane_(PlaneTree::single_vertex(true)) {
    corner_of_edge_.push_back({0, -1});          // the unique corner of the planted seed
    binary_vertex_of_key_.push_back(0);          // plant half-edge <-> leaf 0's class
}

int CoupledGrower::slot_of(const CornerHandle& h) const {
    if (h.after < 0) return 0;  // corner after the plant/parent half-edge
    const auto& cs = plane_.children(h.vertex);
    const auto it = std::find(cs.begin(), cs.end(), h.after);
    return 1 + static_cast<int>(it - cs.begin());
}

void CoupledGrower::step(Rng& rng) {
    const int e = grower_.sample_edge(rng);
    const CornerHandle corner = corner_of_edge_[e];
    const auto ids = grower_.split_edge(e, grower_.steps_done() + 2);

    const Vertex v = corner.vertex;
    const Vertex w = plane_.graft_in_place(Corner{v, slot_of(corner)});
    // The split corner keeps its handle and pairs with the half keeping the
    // a endpoint; the fresh corner after the new child pairs with the other
    // half, and the new leaf's corner with the pendant (the self-loop).
    corner_of_edge_.resize(grower_.edge_count());
    corner_of_edge_[ids.first_half] = corner;
    corner_of_edge_[ids.second_half] = {v, w};
    corner_of_edge_[ids.pendant] = {w, -1};
    binary_vertex_of_key_.push_back(ids.mid_vertex);  // tree edge key w
}

bool CoupledGrower::coupling_isomorphic() const {
    const LoopResult lr = loop_with_map(plane_);
    const GluResult glu = glu_with_classes(grower_.tree());
    if (lr.graph.num_vertices != glu.graph.num_vertices) return false;
    if (lr.graph.edges.size() != glu.graph.edges.size()) return false;

    // Looptree vertex -> glu class through the maintained map.
    std::vector<int> image(lr.graph.num_vertices, -1);
    std::vector<char> hit(glu.graph.num_vertices, 0);
    for (Vertex key = 0; key < plane_.size(); ++key) {
        const int lt = lr.vertex_of_edge_key[key];
        if (lt < 0) continue;
        const int cls = glu.class_of[binary_vertex_of_key_[key]];
        image[lt] = cls;
        if (hit[cls]) return false;
        hit[cls] = 1;
    }
    std::vector<std::pair<int, int>> mapped;
    mapped.reserve(lr.graph.edges.size());
    for (const auto& [u, v] : lr.graph.edges) {
        int a = image[u], b = image[v];
        if (a > b) std::swap(a, b);
        mapped.emplace_back(a, b);
    }
    std::vector<std::pair<int, int>> expected = glu.graph.edges;
    std::sort(mapped.begin(), mapped.end());
    std::sort(expected.begin(), expected.end());
    return mapped == expected;
}

CoupledGrowth grow_coupled(int n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("grow_coupled: need n >= 1");
    CoupledGrower grower;
    CoupledGrowth out;
    out.binary_states.push_back(grower.binary_tree());
    out.plane_states.push_back(grower.plane_tree());
    out.all_steps_isomorphic = grower.coupling_isomorphic();
    while (grower.size() < n) {
        grower.step(rng);
        out.binary_states.push_back(grower.binary_tree());
        out.plane_states.push_back(grower.plane_tree());
        out.all_steps_isomorphic = out.all_steps_isomorphic && grower.coupling_isomorphic();
    }
    return out;
}

}  // namespace lpam
