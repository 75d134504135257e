#include "lpam/decorated.hpp"

#include "lpam/enumerate.hpp"

#include <json.hpp>

#include <algorithm>

namespace lpam {

DecoratedTree make_decorated(const TreeAdjacency& adj, std::vector<int> labels) {
    if (adj.size() != labels.size() || labels.empty())
        throw std::invalid_argument("make_decorated: size mismatch");
    for (int l : labels) {
        if (l < 1) throw std::invalid_argument("make_decorated: labels must be positive");
    }
    // Normalize to the canonical shape order.
    const auto order = canonical_shape_order(adj);  // new position -> old vertex
    std::vector<int> pos_of(adj.size());
    for (size_t p = 0; p < order.size(); ++p) pos_of[order[p]] = static_cast<int>(p);
    DecoratedTree t;
    t.adj.resize(adj.size());
    t.labels.resize(adj.size());
    for (size_t p = 0; p < order.size(); ++p) {
        t.labels[p] = labels[order[p]];
        for (int u : adj[order[p]]) t.adj[p].push_back(pos_of[u]);
        std::sort(t.adj[p].begin(), t.adj[p].end());
    }
    return t;
}

DecoratedTree decorated_single(int label) { return make_decorated(TreeAdjacency{{}}, {label}); }

DecoratedTree decorated_from_plane(const PlaneTree& shape, const std::vector<int>& labels_by_vertex) {
    return make_decorated(adjacency_of(shape), labels_by_vertex);
}

namespace {
nlohmann::json decorated_node_json(const DecoratedTree& t, int v, int from) {
    nlohmann::json j;
    j["label"] = t.labels[v];
    j["children"] = nlohmann::json::array();
    for (int u : t.adj[v]) {
        if (u != from) j["children"].push_back(decorated_node_json(t, u, v));
    }
    return j;
}

void decorated_node_parse(const nlohmann::json& j, int parent, TreeAdjacency& adj, std::vector<int>& labels) {
    const int v = static_cast<int>(labels.size());
    labels.push_back(j.at("label").get<int>());
    adj.emplace_back();
    if (parent >= 0) {
        adj[parent].push_back(v);
        adj[v].push_back(parent);
    }
    for (const auto& c : j.at("children")) decorated_node_parse(c, v, adj, labels);
}
}  // namespace

std::string decorated_to_json(const DecoratedTree& t) { return decorated_node_json(t, 0, -1).dump(); }

DecoratedTree decorated_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    TreeAdjacency adj;
    std::vector<int> labels;
    decorated_node_parse(j, -1, adj, labels);
    return make_decorated(adj, labels);
}

int DecoratedOrderUniverse::require(const DecoratedTree& t) const {
    const auto it = index_of.find(t.code());
    if (it == index_of.end()) throw std::invalid_argument("decorated tree outside universe");
    return it->second;
}

namespace {
DecoratedOrderUniverse universe_from(std::map<std::string, DecoratedTree>&& pool) {
    DecoratedOrderUniverse u;
    u.elements.reserve(pool.size());
    for (auto& [code, t] : pool) u.elements.push_back(std::move(t));
    std::sort(u.elements.begin(), u.elements.end(), [](const DecoratedTree& a, const DecoratedTree& b) {
        const auto ka = std::tuple(a.weight(), a.size(), a.code());
        const auto kb = std::tuple(b.weight(), b.size(), b.code());
        return ka < kb;
    });
    for (size_t i = 0; i < u.elements.size(); ++i) u.index_of[u.elements[i].code()] = static_cast<int>(i);
    return u;
}
}  // namespace

DecoratedOrderUniverse enumerate_decorated(int w_max, int k_max) {
    if (w_max < 1 || k_max < 1 || w_max > 6 || k_max > 6)
        throw GuardError("enumerate_decorated: bounds must be in [1, 6]");
    std::map<std::string, DecoratedTree> pool;
    for (int k = 1; k <= std::min(k_max, w_max); ++k) {
        for (const auto& [code, shape] : enumerate_abstract_trees(k)) {
            const TreeAdjacency adj = adjacency_of(shape);
            std::vector<int> labels(k, 1);
            // Odometer over labelings with total weight <= w_max.
            while (true) {
                int w = 0;
                for (int l : labels) w += l;
                if (w <= w_max) {
                    DecoratedTree t = make_decorated(adj, labels);
                    pool.emplace(t.code(), std::move(t));
                }
                int i = k - 1;
                while (i >= 0 && labels[i] == w_max) {
                    labels[i] = 1;
                    --i;
                }
                if (i < 0) break;
                ++labels[i];
            }
        }
    }
    return universe_from(std::move(pool));
}

namespace {
DecoratedTree with_label(const DecoratedTree& t, int v, int new_label) {
    std::vector<int> labels = t.labels;
    labels[v] = new_label;
    return make_decorated(t.adj, labels);
}

DecoratedTree without_leaf(const DecoratedTree& t, int leaf, int neighbor_delta) {
    const int neighbor = t.adj[leaf][0];
    TreeAdjacency adj(t.size() - 1);
    std::vector<int> labels(t.size() - 1);
    std::vector<int> remap(t.size(), -1);
    int next = 0;
    for (int v = 0; v < t.size(); ++v) {
        if (v != leaf) remap[v] = next++;
    }
    for (int v = 0; v < t.size(); ++v) {
        if (v == leaf) continue;
        labels[remap[v]] = t.labels[v] + (v == neighbor ? neighbor_delta : 0);
        for (int u : t.adj[v]) {
            if (u != leaf) adj[remap[v]].push_back(remap[u]);
        }
    }
    return make_decorated(adj, labels);
}
}  // namespace

std::vector<std::pair<DecoratedTree, int64_t>> reduction_contributions(const DecoratedTree& tau) {
    if (tau.weight() < 2) throw std::invalid_argument("reduction_contributions: weight must be >= 2");
    std::vector<std::pair<DecoratedTree, int64_t>> out;
    for (int v = 0; v < tau.size(); ++v) {
        const int64_t l = tau.labels[v];
        if (l >= 2) out.emplace_back(with_label(tau, v, static_cast<int>(l) - 1), l * (l - 1));
    }
    for (int v = 0; v < tau.size(); ++v) {
        if (tau.labels[v] != 1 || tau.adj[v].size() != 1) continue;
        const int64_t la = tau.labels[tau.adj[v][0]];
        out.emplace_back(without_leaf(tau, v, +1), 1);
        out.emplace_back(without_leaf(tau, v, 0), 2 * la);
        if (la >= 2) out.emplace_back(without_leaf(tau, v, -1), la * (la - 1));
    }
    return out;
}

DecoratedOrderUniverse reduction_closure(const DecoratedTree& tau) {
    std::map<std::string, DecoratedTree> pool;
    std::vector<DecoratedTree> todo{tau};
    pool.emplace(tau.code(), tau);
    while (!todo.empty()) {
        const DecoratedTree t = std::move(todo.back());
        todo.pop_back();
        if (t.weight() < 2) continue;
        for (auto& [reduced, coeff] : reduction_contributions(t)) {
            if (pool.emplace(reduced.code(), reduced).second) todo.push_back(reduced);
        }
    }
    return universe_from(std::move(pool));
}

}  // namespace lpam
