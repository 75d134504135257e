#include "lpam/growth.hpp"

#include <algorithm>
#include <cmath>

namespace lpam {

namespace {
// Fenwick tree over per-vertex weights, for the affine (delta != 0) rule.
class WeightIndex {
public:
    void push(double w) {
        weights_.push_back(w);
        const size_t i = weights_.size();  // 1-based index of the new slot
        double acc = w;
        const size_t bound = i - (i & (~i + 1));
        for (size_t j = i - 1; j > bound; j -= j & (~j + 1)) acc += tree_[j - 1];
        tree_.push_back(acc);
        total_ += w;
    }
    void add(size_t idx, double w) {
        weights_[idx] += w;
        total_ += w;
        for (size_t i = idx + 1; i <= tree_.size(); i += i & (~i + 1)) tree_[i - 1] += w;
    }
    double total() const { return total_; }
    // Largest prefix with cumulative weight <= x.
    size_t locate(double x) const {
        size_t pos = 0;
        size_t mask = 1;
        while ((mask << 1) <= tree_.size()) mask <<= 1;
        for (; mask > 0; mask >>= 1) {
            const size_t next = pos + mask;
            if (next <= tree_.size() && tree_[next - 1] <= x) {
                x -= tree_[next - 1];
                pos = next;
            }
        }
        return std::min(pos, weights_.size() - 1);
    }

private:
    std::vector<double> weights_;
    std::vector<double> tree_;
    double total_ = 0.0;
};
}  // namespace

PlaneTree grow_lpam_tree(PlaneTree seed, int n, double delta, Rng& rng, std::vector<Corner>* choices) {
    if (delta <= -1.0) throw std::invalid_argument("grow_lpam: delta must exceed -1");
    if (seed.size() < 1 || (!seed.planted() && seed.size() < 2))
        throw std::invalid_argument("grow_lpam: non-planted seed needs >= 2 vertices");
    if (n < seed.size()) throw std::invalid_argument("grow_lpam: target below seed size");

    PlaneTree t = std::move(seed);
    if (choices) choices->reserve(choices->size() + (n - t.size()));

    if (delta == 0.0) {
        // One slot per corner: picking a uniform slot then a uniform corner
        // of the picked vertex is the degree-then-corner rule, and every
        // corner ends up equally likely.
        std::vector<Vertex> by_corner;
        by_corner.reserve(2 * n);
        for (Vertex v = 0; v < t.size(); ++v) {
            for (int k = 0; k < t.degree(v); ++k) by_corner.push_back(v);
        }
        while (t.size() < n) {
            const Vertex v = by_corner[rng.index(by_corner.size())];
            const Corner c{v, static_cast<int32_t>(rng.below(t.degree(v)))};
            const Vertex w = t.graft_in_place(c);
            if (choices) choices->push_back(c);
            by_corner.push_back(v);
            by_corner.push_back(w);
        }
        return t;
    }

    WeightIndex weights;
    for (Vertex v = 0; v < t.size(); ++v) weights.push(t.degree(v) + delta);
    while (t.size() < n) {
        const Vertex v = static_cast<Vertex>(weights.locate(rng.real01() * weights.total()));
        const Corner c{v, static_cast<int32_t>(rng.below(t.degree(v)))};
        t.graft_in_place(c);
        if (choices) choices->push_back(c);
        weights.add(v, 1.0);
        weights.push(1.0 + delta);
    }
    return t;
}

GrowthTrajectory grow_lpam(const PlaneTree& seed, int n, double delta, uint64_t stream_seed) {
    GrowthTrajectory traj;
    traj.seed = seed;
    traj.delta = delta;
    traj.rng_seed = stream_seed;
    Rng rng(stream_seed);
    traj.final_tree = grow_lpam_tree(seed, n, delta, rng, &traj.choices);
    return traj;
}

PlaneTree GrowthTrajectory::state_at(int n) const {
    if (n < seed.size() || n > final_tree.size()) throw std::invalid_argument("state_at: size out of range");
    PlaneTree t = seed;
    for (int k = 0; t.size() < n; ++k) t.graft_in_place(choices[k]);
    return t;
}

std::vector<int> max_degree_profile(const GrowthTrajectory& traj) {
    std::vector<int> deg(traj.seed.size());
    int maxdeg = 0;
    for (Vertex v = 0; v < traj.seed.size(); ++v) {
        deg[v] = traj.seed.degree(v);
        maxdeg = std::max(maxdeg, deg[v]);
    }
    std::vector<int> profile{maxdeg};
    for (const Corner& c : traj.choices) {
        maxdeg = std::max(maxdeg, ++deg[c.vertex]);
        deg.push_back(1);
        profile.push_back(maxdeg);
    }
    return profile;
}

int64_t UrnState::total() const {
    int64_t s = 0;
    for (int64_t c : counts) s += c;
    return s;
}

UrnState polya_sample(int64_t draws, int colors, Rng& rng) {
    if (colors < 1) throw std::invalid_argument("polya_sample: need >= 1 color");
    if (draws < 0) throw std::invalid_argument("polya_sample: negative draw count");
    UrnState urn;
    urn.counts.assign(colors, 1);
    int64_t total = colors;
    for (int64_t d = 0; d < draws; ++d) {
        int64_t r = static_cast<int64_t>(rng.below(static_cast<uint64_t>(total)));
        int i = 0;
        while (r >= urn.counts[i]) r -= urn.counts[i++];
        urn.counts[i] += 2;
        total += 2;
    }
    return urn;
}

void glue_planted_into_corner(PlaneTree& T, const Corner& c, const PlaneTree& P) {
    if (!P.planted()) throw std::invalid_argument("glue_planted_into_corner: part must be planted");
    if (!T.valid_corner(c)) throw std::invalid_argument("glue_planted_into_corner: invalid corner");
    // Insertion position mirrors graft_in_place: the block lands right
    // after half-edge `slot`.
    int pos = c.slot;
    if (c.vertex == T.root() && !T.planted()) pos = c.slot + 1;

    std::vector<Vertex> image(P.size(), -1);
    const auto& root_children = P.children(P.root());
    for (size_t j = 0; j < root_children.size(); ++j) {
        // Copy the j-th root subtree of P, root placed at pos + j.
        std::vector<Vertex> stack{root_children[j]};
        std::vector<Vertex> order;
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            order.push_back(v);
            const auto& cs = P.children(v);
            for (auto it = cs.rbegin(); it != cs.rend(); ++it) stack.push_back(*it);
        }
        for (Vertex v : order) {
            if (v == root_children[j]) {
                image[v] = T.attach_leaf_at(c.vertex, pos + static_cast<int>(j));
            } else {
                image[v] = T.attach_leaf(image[P.parent(v)]);
            }
        }
    }
}

SeedDecomposition grow_via_seed_decomposition(const PlaneTree& seed, int n, Rng& rng) {
    if (seed.planted() || seed.size() < 2)
        throw std::invalid_argument("grow_via_seed_decomposition: seed must be non-planted with >= 2 vertices");
    if (n < seed.size()) throw std::invalid_argument("grow_via_seed_decomposition: target below seed size");

    SeedDecomposition out;
    const int num_corners = seed.corner_count();
    out.urn = polya_sample(n - seed.size(), num_corners, rng);
    out.parts.reserve(num_corners);
    for (int i = 0; i < num_corners; ++i) {
        const int part_size = static_cast<int>((out.urn.counts[i] + 1) / 2);
        out.parts.push_back(grow_lpam_tree(PlaneTree::single_vertex(true), part_size, 0.0, rng));
    }
    out.tree = seed;
    const auto corners = seed.all_corners();
    // Gluing shifts later slots at the same vertex; descending order keeps
    // every original corner position valid.
    for (int i = num_corners - 1; i >= 0; --i) {
        glue_planted_into_corner(out.tree, corners[i], out.parts[i]);
    }
    return out;
}

}  // namespace lpam
