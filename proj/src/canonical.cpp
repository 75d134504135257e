#include "lpam/canonical.hpp"

#include <algorithm>

namespace lpam {

TreeAdjacency adjacency_of(const PlaneTree& t) {
    TreeAdjacency adj(t.size());
    for (Vertex v = 0; v < t.size(); ++v) {
        for (Vertex c : t.children(v)) {
            adj[v].push_back(c);
            adj[c].push_back(v);
        }
    }
    return adj;
}

std::vector<int> tree_centroids(const TreeAdjacency& adj) {
    const int n = static_cast<int>(adj.size());
    if (n == 1) return {0};
    std::vector<int> size(n, 1), order, parent(n, -1);
    order.reserve(n);
    order.push_back(0);
    for (size_t i = 0; i < order.size(); ++i) {
        const int v = order[i];
        for (int u : adj[v]) {
            if (u != parent[v]) {
                parent[u] = v;
                order.push_back(u);
            }
        }
    }
    for (size_t i = order.size(); i-- > 1;) size[parent[order[i]]] += size[order[i]];
    int best = n + 1;
    std::vector<int> centroids;
    for (int v = 0; v < n; ++v) {
        int biggest = n - size[v];
        for (int u : adj[v]) {
            if (u != parent[v]) biggest = std::max(biggest, size[u]);
        }
        if (biggest < best) {
            best = biggest;
            centroids = {v};
        } else if (biggest == best) {
            centroids.push_back(v);
        }
    }
    return centroids;
}

std::string rooted_code(const TreeAdjacency& adj, int root, int from, const std::vector<int>* labels) {
    std::vector<std::string> child_codes;
    for (int u : adj[root]) {
        if (u != from) child_codes.push_back(rooted_code(adj, u, root, labels));
    }
    std::sort(child_codes.begin(), child_codes.end());
    std::string code;
    if (labels) {
        code = "{" + std::to_string((*labels)[root]) + ":";
        for (const auto& c : child_codes) code += c;
        code += "}";
    } else {
        code = "(";
        for (const auto& c : child_codes) code += c;
        code += ")";
    }
    return code;
}

std::string unrooted_code(const TreeAdjacency& adj, const std::vector<int>* labels) {
    const auto centroids = tree_centroids(adj);
    if (centroids.size() == 1) return rooted_code(adj, centroids[0], -1, labels);
    std::string a = rooted_code(adj, centroids[0], centroids[1], labels);
    std::string b = rooted_code(adj, centroids[1], centroids[0], labels);
    if (b < a) std::swap(a, b);
    return "[" + a + b + "]";
}

AbstractTreeCode canonical_code(const PlaneTree& t) { return unrooted_code(adjacency_of(t), nullptr); }

namespace {
// Appends vertices in canonical traversal order: children visited by
// ascending rooted code, ties broken by vertex id (harmless: equal-code
// siblings are related by an automorphism).
void canonical_visit(const TreeAdjacency& adj, int v, int from, std::vector<int>& out) {
    out.push_back(v);
    std::vector<std::pair<std::string, int>> kids;
    for (int u : adj[v]) {
        if (u != from) kids.emplace_back(rooted_code(adj, u, v, nullptr), u);
    }
    std::sort(kids.begin(), kids.end());
    for (const auto& [code, u] : kids) canonical_visit(adj, u, v, out);
}
}  // namespace

std::vector<int> canonical_shape_order(const TreeAdjacency& adj) {
    const auto centroids = tree_centroids(adj);
    int root = centroids[0];
    if (centroids.size() == 2) {
        const std::string a = rooted_code(adj, centroids[0], centroids[1], nullptr);
        const std::string b = rooted_code(adj, centroids[1], centroids[0], nullptr);
        root = (a <= b) ? centroids[0] : centroids[1];
    }
    std::vector<int> order;
    order.reserve(adj.size());
    canonical_visit(adj, root, -1, order);
    return order;
}

std::string leaf_labeled_code(const TreeAdjacency& adj, const std::vector<int>& leaf_label) {
    int root = -1;
    for (size_t v = 0; v < leaf_label.size(); ++v) {
        if (leaf_label[v] == 0) root = static_cast<int>(v);
    }
    if (root < 0) throw std::invalid_argument("leaf_labeled_code: no leaf labeled 0");
    // Embed leaf labels into the per-vertex label slot; internal vertices
    // share the sentinel -1 and are distinguished by structure alone.
    return rooted_code(adj, root, -1, &leaf_label);
}

}  // namespace lpam
