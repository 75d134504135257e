#include "lpam/exact_dist.hpp"

#include "lpam/looptree.hpp"

#include <json.hpp>

#include <algorithm>

namespace lpam {

Rat ExactDistribution::total() const {
    Rat s = 0;
    for (const auto& [code, p] : mass) s += p;
    return s;
}

std::string distribution_to_json(const std::map<std::string, Rat>& mass) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [code, p] : mass) j[code] = rat_to_string(p);
    return j.dump();
}

ExactDistribution exact_step_distribution(const PlaneTree& seed, int n) {
    if (seed.planted() || seed.size() < 2)
        throw std::invalid_argument("exact_step_distribution: seed must be non-planted with >= 2 vertices");
    if (n < seed.size()) throw std::invalid_argument("exact_step_distribution: target below seed size");
    if (n > seed.size() + 6) throw GuardError("exact_step_distribution: n exceeds |seed| + 6");

    ExactDistribution cur;
    const AbstractTreeCode seed_code = canonical_code(seed);
    cur.mass[seed_code] = 1;
    cur.reps[seed_code] = seed;
    for (int m = seed.size(); m < n; ++m) {
        ExactDistribution next;
        const Rat denom = 2 * m - 2;
        for (const auto& [code, p] : cur.mass) {
            const PlaneTree& t = cur.reps[code];
            for (Vertex v = 0; v < t.size(); ++v) {
                PlaneTree grown = t;
                grown.attach_leaf(v);
                const AbstractTreeCode gc = canonical_code(grown);
                next.mass[gc] += p * Rat(t.degree(v)) / denom;
                next.reps.emplace(gc, std::move(grown));
            }
        }
        cur = std::move(next);
    }
    return cur;
}

Rat total_variation(const std::map<std::string, Rat>& a, const std::map<std::string, Rat>& b) {
    Rat sum = 0;
    for (const auto& [code, p] : a) {
        const auto it = b.find(code);
        const Rat q = it == b.end() ? Rat(0) : it->second;
        sum += abs(p - q);
    }
    for (const auto& [code, q] : b) {
        if (a.find(code) == a.end()) sum += q;
    }
    return sum / 2;
}

PlaneExactLaw exact_plane_lpam_law(const PlaneTree& seed, int n, const Rat& delta) {
    if (delta <= -1) throw std::invalid_argument("exact_plane_lpam_law: delta must exceed -1");
    if (seed.size() < 1 || (!seed.planted() && seed.size() < 2))
        throw std::invalid_argument("exact_plane_lpam_law: non-planted seed needs >= 2 vertices");
    if (n < seed.size()) throw std::invalid_argument("exact_plane_lpam_law: target below seed size");
    if (n > seed.size() + 5) throw GuardError("exact_plane_lpam_law: n exceeds |seed| + 5");

    PlaneExactLaw cur;
    cur.planted = seed.planted();
    const std::string key0 = serialize_tree(seed);
    cur.states[key0] = 1;
    cur.reps[key0] = seed;
    for (int m = seed.size(); m < n; ++m) {
        PlaneExactLaw next;
        next.planted = cur.planted;
        for (const auto& [key, p] : cur.states) {
            const PlaneTree& t = cur.reps[key];
            Rat weight_sum = 0;
            for (Vertex v = 0; v < t.size(); ++v) weight_sum += Rat(t.degree(v)) + delta;
            for (Vertex v = 0; v < t.size(); ++v) {
                const int deg = t.degree(v);
                const Rat per_corner = p * (Rat(deg) + delta) / weight_sum / deg;
                for (int s = 0; s < deg; ++s) {
                    PlaneTree grown = graft(t, Corner{v, s});
                    const std::string gk = serialize_tree(grown);
                    next.states[gk] += per_corner;
                    next.reps.emplace(gk, std::move(grown));
                }
            }
        }
        cur = std::move(next);
    }
    return cur;
}

std::map<std::string, Rat> loop_law_from_plane(const PlaneExactLaw& law) {
    std::map<std::string, Rat> out;
    for (const auto& [key, p] : law.states) {
        const PlaneTree& t = law.reps.at(key);
        const Looptree g = t.planted() ? loop_planted(t) : loop(t);
        out[canonical_multigraph_code(g)] += p;
    }
    return out;
}

std::vector<int> geodesic_edge_classes(const LabeledBinaryTree& bt) {
    const auto adj = bt.adjacency();
    std::map<std::pair<int, int>, int> edge_index;
    for (size_t e = 0; e < bt.edges.size(); ++e) {
        auto [u, v] = bt.edges[e];
        if (u > v) std::swap(u, v);
        edge_index[{u, v}] = static_cast<int>(e);
    }
    const int root = bt.marked_leaves.at(0);
    std::vector<int> parent(bt.num_vertices, -1);
    std::vector<int> order{root};
    std::vector<char> visited(bt.num_vertices, 0);
    visited[root] = 1;
    for (size_t i = 0; i < order.size(); ++i) {
        for (int u : adj[order[i]]) {
            if (!visited[u]) {
                visited[u] = 1;
                parent[u] = order[i];
                order.push_back(u);
            }
        }
    }
    std::vector<int> cls(bt.edges.size(), -1);
    std::vector<char> in_span(bt.num_vertices, 0);
    in_span[root] = 1;
    for (size_t i = 1; i < bt.marked_leaves.size(); ++i) {
        int w = bt.marked_leaves[i];
        while (!in_span[w]) {
            in_span[w] = 1;
            const int pu = std::min(w, parent[w]), pv = std::max(w, parent[w]);
            cls[edge_index.at({pu, pv})] = static_cast<int>(i);
            w = parent[w];
        }
    }
    for (int c : cls) {
        if (c < 0) throw std::logic_error("geodesic_edge_classes: uncovered edge");
    }
    return cls;
}

namespace {
LabeledBinaryTree split_at(const LabeledBinaryTree& bt, int edge_idx) {
    LabeledBinaryTree out = bt;
    const auto [a, b] = bt.edges[edge_idx];
    const int mid = out.num_vertices++;
    const int leaf = out.num_vertices++;
    out.edges[edge_idx] = {a, mid};
    out.edges.emplace_back(mid, b);
    out.edges.emplace_back(mid, leaf);
    out.marked_leaves.push_back(leaf);
    return out;
}

BinaryExactLaw initial_binary_law() {
    BinaryExactLaw law;
    LabeledBinaryTree b1;
    b1.num_vertices = 2;
    b1.edges = {{0, 1}};
    b1.marked_leaves = {0, 1};
    const std::string key = b1.code();
    law.states[key] = 1;
    law.reps[key] = b1;
    return law;
}

void merge_state(BinaryExactLaw& law, LabeledBinaryTree&& t, const Rat& p) {
    const std::string key = t.code();
    law.states[key] += p;
    law.reps.emplace(key, std::move(t));
}
}  // namespace

BinaryExactLaw exact_remy_law(int steps) { return exact_ford_law(steps, Rat(1, 2), false); }

BinaryExactLaw exact_ford_law(int steps, const Rat& alpha, bool modified) {
    if (alpha < 0 || alpha > 1) throw std::invalid_argument("exact_ford_law: alpha must be in [0, 1]");
    if (steps < 0) throw std::invalid_argument("exact_ford_law: negative step count");
    if (steps > 5) throw GuardError("exact_ford_law: steps exceed 5");

    BinaryExactLaw cur = initial_binary_law();
    for (int s = 0; s < steps; ++s) {
        BinaryExactLaw next;
        for (const auto& [key, p] : cur.states) {
            const LabeledBinaryTree& t = cur.reps[key];
            std::vector<char> labeled_leaf(t.num_vertices, 0);
            for (size_t i = 1; i < t.marked_leaves.size(); ++i) labeled_leaf[t.marked_leaves[i]] = 1;
            std::vector<Rat> weight(t.edges.size());
            Rat weight_sum = 0;
            for (size_t e = 0; e < t.edges.size(); ++e) {
                const auto [u, v] = t.edges[e];
                weight[e] = (labeled_leaf[u] || labeled_leaf[v]) ? Rat(1) - alpha : alpha;
                weight_sum += weight[e];
            }
            if (weight_sum == 0) {
                // alpha = 1 before any internal edge exists: uniform fallback
                for (size_t e = 0; e < t.edges.size(); ++e) weight[e] = 1;
                weight_sum = static_cast<int>(t.edges.size());
            }
            if (!modified) {
                for (size_t e = 0; e < t.edges.size(); ++e) {
                    if (weight[e] == 0) continue;
                    merge_state(next, split_at(t, static_cast<int>(e)), p * weight[e] / weight_sum);
                }
            } else {
                const auto cls = geodesic_edge_classes(t);
                std::map<int, Rat> class_weight;
                std::map<int, int> class_size;
                for (size_t e = 0; e < t.edges.size(); ++e) {
                    class_weight[cls[e]] += weight[e];
                    class_size[cls[e]] += 1;
                }
                for (size_t e = 0; e < t.edges.size(); ++e) {
                    const Rat pe = p * class_weight[cls[e]] / weight_sum / class_size[cls[e]];
                    if (pe == 0) continue;
                    merge_state(next, split_at(t, static_cast<int>(e)), pe);
                }
            }
        }
        cur = std::move(next);
    }
    return cur;
}

std::map<std::string, Rat> glu_law_from_binary(const BinaryExactLaw& law) {
    std::map<std::string, Rat> out;
    for (const auto& [key, p] : law.states) {
        out[canonical_multigraph_code(glu_discrete(law.reps.at(key)))] += p;
    }
    return out;
}

}  // namespace lpam
