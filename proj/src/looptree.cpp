#include "lpam/looptree.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <queue>

namespace lpam {

namespace {
// Half-edge keys around v in cyclic order: the edge toward the parent is
// keyed by v itself, the plant half-edge by the root id, child edges by the
// child id.
std::vector<Vertex> half_edge_keys(const PlaneTree& t, Vertex v) {
    std::vector<Vertex> keys;
    if (v == t.root()) {
        if (t.planted()) keys.push_back(t.root());
    } else {
        keys.push_back(v);
    }
    for (Vertex c : t.children(v)) keys.push_back(c);
    return keys;
}
}  // namespace

LoopResult loop_with_map(const PlaneTree& t) {
    if (t.size() < 2 && !t.planted()) throw std::invalid_argument("loop: tree has no edges");
    LoopResult res;
    res.vertex_of_edge_key.assign(t.size(), -1);
    int next = 0;
    for (Vertex v = 0; v < t.size(); ++v) {
        if (v != t.root() || t.planted()) res.vertex_of_edge_key[v] = next++;
    }
    res.graph.num_vertices = next;
    res.cycles.resize(t.size());
    for (Vertex v = 0; v < t.size(); ++v) {
        const auto keys = half_edge_keys(t, v);
        const int d = static_cast<int>(keys.size());
        auto& cyc = res.cycles[v];
        cyc.reserve(d);
        for (int i = 0; i < d; ++i) cyc.push_back(res.vertex_of_edge_key[keys[i]]);
        for (int i = 0; i < d; ++i) res.graph.add_edge(cyc[i], cyc[(i + 1) % d]);
    }
    return res;
}

Looptree loop(const PlaneTree& t) { return loop_with_map(t).graph; }

Looptree loop_planted(const PlaneTree& t) {
    if (!t.planted()) throw std::invalid_argument("loop_planted: tree is not planted");
    const PlaneTree completed = t.complete_plant();
    LoopResult lr = loop_with_map(completed);
    const Vertex new_leaf = static_cast<Vertex>(completed.size() - 1);
    const int leaf_vertex = lr.vertex_of_edge_key[new_leaf];
    auto& edges = lr.graph.edges;
    const auto it = std::find(edges.begin(), edges.end(), std::make_pair(leaf_vertex, leaf_vertex));
    edges.erase(it);
    return lr.graph;
}

Looptree modified_loop(const PlaneTree& t) {
    if (!t.planted()) throw std::invalid_argument("modified_loop: tree is not planted");
    Looptree g;
    std::vector<int> vertex_of_key(t.size(), -1);
    int next = 0;
    for (Vertex v = 0; v < t.size(); ++v) {
        if (v != t.root()) vertex_of_key[v] = next++;
    }
    const int g_mark = next;
    const int d_mark = next + 1;
    g.num_vertices = next + 2;
    g.marks["g"] = g_mark;
    g.marks["d"] = d_mark;
    for (Vertex v = 0; v < t.size(); ++v) {
        const auto keys = half_edge_keys(t, v);
        const int d = static_cast<int>(keys.size());
        if (v == t.root()) {
            // Cut cycle: the plant endpoint of the corner after the plant is
            // g, of the corner before it d.
            std::vector<int> pts;
            pts.push_back(g_mark);
            for (int i = 1; i < d; ++i) pts.push_back(vertex_of_key[keys[i]]);
            pts.push_back(d_mark);
            for (size_t i = 0; i + 1 < pts.size(); ++i) g.add_edge(pts[i], pts[i + 1]);
        } else {
            for (int i = 0; i < d; ++i) g.add_edge(vertex_of_key[keys[i]], vertex_of_key[keys[(i + 1) % d]]);
        }
    }
    return g;
}

namespace {
struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};
}  // namespace

GluResult glu_with_classes(const LabeledBinaryTree& bt, int num_marked) {
    if (bt.marked_leaves.empty()) throw std::invalid_argument("glu: no marked leaves");
    if (bt.edges.empty()) throw std::invalid_argument("glu: tree has no edges");
    const auto adj = bt.adjacency();
    {
        std::vector<char> seen(bt.num_vertices, 0);
        for (int x : bt.marked_leaves) {
            if (x < 0 || x >= bt.num_vertices || adj[x].size() != 1)
                throw std::invalid_argument("glu: marked vertex is not a leaf");
            if (seen[x]) throw std::invalid_argument("glu: marked leaves not distinct");
            seen[x] = 1;
        }
    }
    const int marks = num_marked < 0 ? static_cast<int>(bt.marked_leaves.size())
                                     : std::min<int>(num_marked, bt.marked_leaves.size());

    // Parent pointers toward x_0; the projection of x_i onto the current
    // span is the first span vertex on the path from x_i up to x_0.
    const int root = bt.marked_leaves[0];
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

    UnionFind uf(bt.num_vertices);
    std::vector<char> in_span(bt.num_vertices, 0);
    in_span[root] = 1;
    for (int i = 1; i < marks; ++i) {
        const int x = bt.marked_leaves[i];
        int w = x;
        while (!in_span[w]) {
            in_span[w] = 1;
            w = parent[w];
        }
        uf.unite(x, w);  // identify x_i with its projection only
    }

    GluResult res;
    res.class_of.assign(bt.num_vertices, -1);
    int next = 0;
    for (int v = 0; v < bt.num_vertices; ++v) {
        const int r = uf.find(v);
        if (res.class_of[r] < 0) res.class_of[r] = next++;
        res.class_of[v] = res.class_of[r];
    }
    res.graph.num_vertices = next;
    for (const auto& [u, v] : bt.edges) res.graph.add_edge(res.class_of[u], res.class_of[v]);
    return res;
}

Looptree glu_discrete(const LabeledBinaryTree& bt, int num_marked) {
    return glu_with_classes(bt, num_marked).graph;
}

Looptree glue_on_seed(const PlaneTree& seed, const std::vector<Looptree>& parts) {
    if (seed.planted() || seed.size() < 2) throw std::invalid_argument("glue_on_seed: seed must be non-planted with >= 2 vertices");
    if (static_cast<int>(parts.size()) != seed.corner_count())
        throw std::invalid_argument("glue_on_seed: need one part per seed corner");

    // Midpoint vertex per seed edge (edges keyed by child vertex).
    std::vector<int> midpoint(seed.size(), -1);
    int next = 0;
    for (Vertex v = 0; v < seed.size(); ++v) {
        if (v != seed.root()) midpoint[v] = next++;
    }

    Looptree out;
    const auto corners = seed.all_corners();
    std::vector<std::pair<int, int>> pending;  // part edges to append after ids settle
    std::vector<std::vector<int>> part_map(parts.size());
    for (size_t i = 0; i < parts.size(); ++i) {
        const Looptree& p = parts[i];
        const auto git = p.marks.find("g");
        const auto dit = p.marks.find("d");
        if (git == p.marks.end() || dit == p.marks.end())
            throw std::invalid_argument("glue_on_seed: part lacks g/d marks");
        const Corner c = corners[i];
        const auto keys = half_edge_keys(seed, c.vertex);
        const int deg = static_cast<int>(keys.size());
        const int left = midpoint[keys[c.slot]];
        const int right = midpoint[keys[(c.slot + 1) % deg]];
        auto& map = part_map[i];
        map.assign(p.num_vertices, -1);
        map[git->second] = left;
        map[dit->second] = right;
        for (int v = 0; v < p.num_vertices; ++v) {
            if (map[v] < 0) map[v] = next++;
        }
        for (const auto& [u, v] : p.edges) pending.emplace_back(map[u], map[v]);
    }
    out.num_vertices = next;
    for (const auto& [u, v] : pending) out.add_edge(u, v);
    return out;
}

GraphCSR csr_of(const Looptree& g) {
    GraphCSR c;
    c.n = g.num_vertices;
    std::vector<int> deg(c.n, 0);
    for (const auto& [u, v] : g.edges) {
        if (u == v) continue;  // self-loops never shorten paths
        ++deg[u];
        ++deg[v];
    }
    c.offsets.assign(c.n + 1, 0);
    for (int v = 0; v < c.n; ++v) c.offsets[v + 1] = c.offsets[v] + deg[v];
    c.neighbors.resize(c.offsets[c.n]);
    std::vector<int> cursor(c.offsets.begin(), c.offsets.end() - 1);
    for (const auto& [u, v] : g.edges) {
        if (u == v) continue;
        c.neighbors[cursor[u]++] = v;
        c.neighbors[cursor[v]++] = u;
    }
    return c;
}

std::vector<int> multi_source_bfs_distances(const GraphCSR& g, const std::vector<int>& sources) {
    std::vector<int> dist(g.n, -1);
    std::vector<int> queue;
    queue.reserve(g.n);
    for (int s : sources) {
        if (dist[s] < 0) {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    for (size_t head = 0; head < queue.size(); ++head) {
        const int v = queue[head];
        for (int i = g.offsets[v]; i < g.offsets[v + 1]; ++i) {
            const int u = g.neighbors[i];
            if (dist[u] < 0) {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    return dist;
}

std::vector<int> bfs_distances(const GraphCSR& g, int src) {
    return multi_source_bfs_distances(g, std::vector<int>{src});
}

FiniteMetricSpace shortest_path_metric(const Looptree& g) {
    if (g.num_vertices > 2000) throw GuardError("shortest_path_metric: graph too large for a full table");
    const GraphCSR c = csr_of(g);
    FiniteMetricSpace space(g.num_vertices);
    for (int v = 0; v < g.num_vertices; ++v) {
        const auto dist = bfs_distances(c, v);
        for (int u = 0; u < g.num_vertices; ++u) {
            if (dist[u] < 0) throw std::invalid_argument("shortest_path_metric: disconnected graph");
            space.set(v, u, dist[u]);
        }
    }
    for (const auto& [name, v] : g.marks) space.marks().push_back(v);
    return space;
}

int diameter_by_bfs(const Looptree& g) {
    const GraphCSR c = csr_of(g);
    int best = 0;
    for (int v = 0; v < c.n; ++v) {
        for (int d : bfs_distances(c, v)) {
            if (d < 0) throw std::invalid_argument("diameter_by_bfs: disconnected graph");
            best = std::max(best, d);
        }
    }
    return best;
}

int64_t looptree_diameter(const PlaneTree& t) {
    if (t.size() < 2 && !t.planted()) throw std::invalid_argument("looptree_diameter: tree has no edges");
    const int n = t.size();
    // Reverse BFS order so children are processed before parents.
    std::vector<Vertex> order;
    order.reserve(n);
    order.push_back(t.root());
    for (size_t i = 0; i < order.size(); ++i) {
        for (Vertex c : t.children(order[i])) order.push_back(c);
    }

    // height[v]: largest looptree distance from the point of edge
    // (parent(v), v) into the cycles below v.
    std::vector<int64_t> height(n, 0);
    std::vector<int64_t> pos_heights;
    int64_t diameter = 0;
    for (size_t i = order.size(); i-- > 0;) {
        const Vertex v = order[i];
        const int deg = t.degree(v);
        // Heights per cyclic position: the up/plant position carries 0.
        pos_heights.clear();
        if (v != t.root() || t.planted()) pos_heights.push_back(0);
        for (Vertex c : t.children(v)) pos_heights.push_back(height[c]);
        const int d = static_cast<int>(pos_heights.size());
        if (d != deg) throw std::logic_error("looptree_diameter: degree mismatch");
        for (int a = 0; a < d; ++a) {
            for (int b = a + 1; b < d; ++b) {
                const int64_t around = std::min(b - a, d - (b - a));
                diameter = std::max(diameter, pos_heights[a] + around + pos_heights[b]);
            }
        }
        if (v != t.root()) {
            int64_t h = 0;
            // Position 0 is the up edge; child k sits at position k+1.
            for (size_t k = 0; k < t.children(v).size(); ++k) {
                const int64_t around = std::min<int64_t>(k + 1, deg - (k + 1));
                h = std::max(h, around + height[t.children(v)[k]]);
            }
            height[v] = h;
        }
    }
    return diameter;
}

namespace {
struct MultigraphView {
    int n;
    std::vector<int> self_loops;
    std::vector<std::vector<std::pair<int, int>>> nbr;  // (neighbor, multiplicity)

    explicit MultigraphView(const Looptree& g) : n(g.num_vertices), self_loops(n, 0), nbr(n) {
        std::map<std::pair<int, int>, int> mult;
        for (const auto& e : g.edges) {
            if (e.first == e.second) {
                ++self_loops[e.first];
            } else {
                ++mult[e];
            }
        }
        for (const auto& [e, m] : mult) {
            nbr[e.first].emplace_back(e.second, m);
            nbr[e.second].emplace_back(e.first, m);
        }
    }
};

// One pass of color refinement; returns the number of colors.
int refine(const MultigraphView& g, std::vector<int>& color) {
    while (true) {
        std::vector<std::pair<std::vector<int>, int>> sigs(g.n);
        for (int v = 0; v < g.n; ++v) {
            std::vector<int>& s = sigs[v].first;
            s.push_back(color[v]);
            s.push_back(g.self_loops[v]);
            std::vector<std::pair<int, int>> around;
            around.reserve(g.nbr[v].size());
            for (const auto& [u, m] : g.nbr[v]) around.emplace_back(color[u], m);
            std::sort(around.begin(), around.end());
            for (const auto& [c, m] : around) {
                s.push_back(c);
                s.push_back(m);
            }
            sigs[v].second = v;
        }
        std::vector<std::pair<std::vector<int>, int>> sorted = sigs;
        std::sort(sorted.begin(), sorted.end());
        std::vector<int> fresh(g.n);
        int classes = 0;
        for (int i = 0; i < g.n; ++i) {
            if (i > 0 && sorted[i].first != sorted[i - 1].first) ++classes;
            fresh[sorted[i].second] = classes;
        }
        ++classes;
        bool changed = false;
        for (int v = 0; v < g.n; ++v) {
            if (fresh[v] != color[v]) changed = true;
        }
        const int old_classes = 1 + *std::max_element(color.begin(), color.end());
        color = fresh;
        if (!changed || classes == old_classes) return classes;
        if (classes == g.n) return classes;
    }
}

std::string emit_code(const MultigraphView& g, const std::vector<int>& color,
                      const std::map<std::string, int>& marks, bool use_marks) {
    std::vector<int> rank(g.n);
    for (int v = 0; v < g.n; ++v) rank[v] = color[v];
    std::vector<std::tuple<int, int, int>> triples;
    for (int v = 0; v < g.n; ++v) {
        if (g.self_loops[v] > 0) triples.emplace_back(rank[v], rank[v], g.self_loops[v]);
        for (const auto& [u, m] : g.nbr[v]) {
            if (rank[v] <= rank[u]) triples.emplace_back(rank[v], rank[u], m);
        }
    }
    std::sort(triples.begin(), triples.end());
    std::string out = "V" + std::to_string(g.n) + ";";
    for (const auto& [a, b, m] : triples) {
        out += std::to_string(a) + "-" + std::to_string(b) + "x" + std::to_string(m) + ";";
    }
    if (use_marks) {
        for (const auto& [name, v] : marks) out += name + "@" + std::to_string(rank[v]) + ";";
    }
    return out;
}

void canonical_search(const MultigraphView& g, std::vector<int> color,
                      const std::map<std::string, int>& marks, bool use_marks, std::string& best) {
    const int classes = refine(g, color);
    if (classes == g.n) {
        std::string code = emit_code(g, color, marks, use_marks);
        if (best.empty() || code < best) best = std::move(code);
        return;
    }
    // Individualize each vertex of the smallest non-singleton class.
    std::vector<int> count(classes, 0);
    for (int v = 0; v < g.n; ++v) ++count[color[v]];
    int target = -1;
    for (int c = 0; c < classes; ++c) {
        if (count[c] > 1) {
            target = c;
            break;
        }
    }
    for (int v = 0; v < g.n; ++v) {
        if (color[v] != target) continue;
        std::vector<int> branched = color;
        branched[v] = classes;
        canonical_search(g, std::move(branched), marks, use_marks, best);
    }
}
}  // namespace

std::string canonical_multigraph_code(const Looptree& g, bool use_marks) {
    if (g.num_vertices == 0) return "V0;";
    MultigraphView view(g);
    std::vector<int> color(g.num_vertices, 0);
    if (use_marks) {
        // Marked vertices start in their own name-determined classes.
        int c = 1;
        for (const auto& [name, v] : g.marks) color[v] = c++;
    }
    std::string best;
    canonical_search(view, std::move(color), g.marks, use_marks, best);
    return best;
}

std::string looptree_to_json(const Looptree& g) {
    nlohmann::json j;
    j["vertices"] = nlohmann::json::array();
    for (int v = 0; v < g.num_vertices; ++v) j["vertices"].push_back(v);
    j["edges"] = nlohmann::json::array();
    for (const auto& [u, v] : g.edges) j["edges"].push_back({u, v});
    j["marks"] = nlohmann::json::object();
    for (const auto& [name, v] : g.marks) j["marks"][name] = v;
    return j.dump();
}

Looptree looptree_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    Looptree g;
    g.num_vertices = static_cast<int>(j.at("vertices").size());
    for (const auto& e : j.at("edges")) g.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
    if (j.contains("marks")) {
        for (auto it = j["marks"].begin(); it != j["marks"].end(); ++it) g.marks[it.key()] = it.value().get<int>();
    }
    return g;
}

}  // namespace lpam
