#include "lpam/continuum.hpp"

#include "lpam/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace lpam {

CircleChain sample_circle_chain(int k, Rng& rng) {
    if (k < 1) throw std::invalid_argument("sample_circle_chain: need k >= 1");
    CircleChain chain;
    chain.circle_lengths.reserve(k);
    chain.attach.assign(k, {-1, 0.0});
    // Points of intensity t/2 dt: theta_j = 2 sqrt(Gamma_j) with Gamma_j a
    // unit-exponential partial sum; circumference j is the gap.
    double gamma = 0.0, prev_theta = 0.0;
    std::vector<double> length_prefix;  // cumulative lengths for uniform attachment
    length_prefix.reserve(k);
    for (int j = 0; j < k; ++j) {
        gamma += rng.exponential(1.0);
        const double theta = 2.0 * std::sqrt(gamma);
        chain.circle_lengths.push_back(theta - prev_theta);
        prev_theta = theta;
        if (j >= 1) {
            const double u = rng.real01() * length_prefix.back();
            const auto it = std::upper_bound(length_prefix.begin(), length_prefix.end(), u);
            const int host = static_cast<int>(it - length_prefix.begin());
            const double before = host == 0 ? 0.0 : length_prefix[host - 1];
            chain.attach[j] = {host, u - before};
        }
        length_prefix.push_back((length_prefix.empty() ? 0.0 : length_prefix.back()) +
                                chain.circle_lengths[j]);
    }
    return chain;
}

namespace {
double circ_dist(double len, double a, double b) {
    const double arc = std::abs(a - b);
    return std::min(arc, len - arc);
}
}  // namespace

double chain_diameter(const CircleChain& chain) {
    const int k = static_cast<int>(chain.circle_lengths.size());
    std::vector<std::vector<std::pair<double, int>>> children(k);  // (position, child)
    for (int j = 1; j < k; ++j) children[chain.attach[j].first].emplace_back(chain.attach[j].second, j);

    // height[j]: deepest point of the subtree of circle j measured from its
    // own glue point (arc 0). Children carry larger indices, so one reverse
    // sweep suffices.
    std::vector<double> height(k, 0.0);
    double diameter = 0.0;
    for (int j = k - 1; j >= 0; --j) {
        const double len = chain.circle_lengths[j];
        height[j] = len / 2.0;
        for (const auto& [pos, child] : children[j]) {
            height[j] = std::max(height[j], circ_dist(len, 0.0, pos) + height[child]);
        }
        // Diameter candidates with this circle as the top: subtree-subtree
        // pairs, subtree to the antipodal free point, free-free.
        std::vector<std::pair<double, double>> at;  // (position, height)
        if (j > 0) at.emplace_back(0.0, 0.0);       // exit toward the parent
        for (const auto& [pos, child] : children[j]) at.emplace_back(pos, height[child]);
        double cand = len / 2.0;
        for (size_t a = 0; a < at.size(); ++a) {
            cand = std::max(cand, at[a].second + len / 2.0);
            for (size_t b = a + 1; b < at.size(); ++b) {
                cand = std::max(cand, at[a].second + circ_dist(len, at[a].first, at[b].first) + at[b].second);
            }
        }
        diameter = std::max(diameter, cand);
    }
    return diameter;
}

FiniteMetricSpace discretize_chain(const CircleChain& chain, double resolution,
                                   double* max_resolution_error) {
    if (resolution <= 0) throw std::invalid_argument("discretize_chain: resolution must be positive");
    const int k = static_cast<int>(chain.circle_lengths.size());
    // Grid points per circle; a later circle shares its glue point with the
    // host, so it contributes one point fewer than its segment count.
    std::vector<int> first_point(k + 1, 0);
    std::vector<int> points_per(k);
    double max_step = 0.0;
    for (int j = 0; j < k; ++j) {
        points_per[j] = std::max(1, static_cast<int>(std::ceil(chain.circle_lengths[j] * resolution)));
        first_point[j + 1] = first_point[j] + (j == 0 ? points_per[j] : points_per[j] - 1);
        max_step = std::max(max_step, chain.circle_lengths[j] / points_per[j]);
    }
    const int n = first_point[k];
    if (n > 20000) throw GuardError("discretize_chain: too many grid points; lower the resolution or k");
    if (max_resolution_error) *max_resolution_error = max_step / 2.0;

    std::vector<std::vector<std::pair<int, double>>> adj(n);
    const auto add = [&](int a, int b, double w) {
        adj[a].emplace_back(b, w);
        adj[b].emplace_back(a, w);
    };
    // Point id for arc position `pos` on a circle; segment index i of
    // circle j >= 1 maps to the anchor for i = 0 and otherwise to the
    // (i-1)-th of its own points.
    std::vector<int> anchor(k, -1);
    const auto point_id = [&](int circle, int idx) {
        if (circle == 0) return first_point[0] + idx % points_per[0];
        idx %= points_per[circle];
        return idx == 0 ? anchor[circle] : first_point[circle] + idx - 1;
    };
    for (int j = 0; j < k; ++j) {
        if (j > 0) {
            const auto [host, pos] = chain.attach[j];
            const double host_step = chain.circle_lengths[host] / points_per[host];
            anchor[j] = point_id(host, static_cast<int>(std::lround(pos / host_step)));
        }
        const double step = chain.circle_lengths[j] / points_per[j];
        if (points_per[j] == 1) continue;  // degenerate ring adds no points
        for (int i = 0; i < points_per[j]; ++i) add(point_id(j, i), point_id(j, i + 1), step);
    }

    // All-pairs Dijkstra.
    FiniteMetricSpace space(n);
    std::vector<double> dist(n);
    using Item = std::pair<double, int>;
    for (int src = 0; src < n; ++src) {
        std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        dist[src] = 0;
        heap.push({0.0, src});
        while (!heap.empty()) {
            const auto [d0, v] = heap.top();
            heap.pop();
            if (d0 > dist[v]) continue;
            for (const auto& [u, w] : adj[v]) {
                if (dist[v] + w < dist[u]) {
                    dist[u] = dist[v] + w;
                    heap.push({dist[u], u});
                }
            }
        }
        for (int v = 0; v < n; ++v) space.set(src, v, dist[v]);
    }
    return space;
}

FiniteMetricSpace line_breaking_space(int k, Rng& rng, double resolution, double* max_resolution_error) {
    return discretize_chain(sample_circle_chain(k, rng), resolution, max_resolution_error);
}

double sample_split_alpha(Rng& rng) {
    const double u = rng.real01_open_zero();
    return u * u;
}

std::array<double, 3> sample_triple_lengths(Rng& rng) {
    // Total: 2 s^2 is Gamma(2, 1), so s = sqrt((E1 + E2) / 2).
    const double total = std::sqrt((rng.exponential(1.0) + rng.exponential(1.0)) / 2.0);
    // Uniform point of the simplex via two uniform cuts.
    double u = rng.real01(), v = rng.real01();
    if (u > v) std::swap(u, v);
    return {total * u, total * (v - u), total * (1.0 - v)};
}

std::vector<double> mass_walk(int steps, Rng& rng) {
    if (steps < 1) throw std::invalid_argument("mass_walk: need >= 1 step");
    std::vector<double> walk(steps);
    double acc = 0.0;
    for (int i = 0; i < steps; ++i) {
        acc += -std::log(sample_split_alpha(rng));
        walk[i] = acc;
    }
    return walk;
}

DimensionEstimate dimension_estimate(const GraphCSR& graph, int centers, const std::vector<double>& radii,
                                     Rng& rng) {
    if (centers < 1) throw std::invalid_argument("dimension_estimate: need >= 1 center");
    if (radii.size() < 2) throw std::invalid_argument("dimension_estimate: need >= 2 radii");
    for (size_t i = 0; i < radii.size(); ++i) {
        if (radii[i] <= 0 || (i > 0 && radii[i] <= radii[i - 1]))
            throw std::invalid_argument("dimension_estimate: radii must be positive and increasing");
    }
    DimensionEstimate est;
    est.profile.radii = radii;
    est.profile.mean_volume.assign(radii.size(), 0.0);
    for (int c = 0; c < centers; ++c) {
        const int center = static_cast<int>(rng.index(graph.n));
        const std::vector<int> dist = bfs_distances(graph, center);
        // Distance histogram, then ball volumes as prefix counts.
        int max_d = 0;
        for (int d : dist) {
            if (d < 0) throw std::invalid_argument("dimension_estimate: disconnected graph");
            max_d = std::max(max_d, d);
        }
        std::vector<int64_t> hist(max_d + 2, 0);
        for (int d : dist) ++hist[d];
        for (size_t i = 1; i < hist.size(); ++i) hist[i] += hist[i - 1];
        for (size_t r = 0; r < radii.size(); ++r) {
            // open ball: vertices with distance < r
            const int64_t cutoff = static_cast<int64_t>(std::ceil(radii[r])) - 1;
            const int64_t inside = cutoff < 0 ? 0
                                   : cutoff >= static_cast<int64_t>(hist.size())
                                       ? hist.back()
                                       : hist[cutoff];
            est.profile.mean_volume[r] += static_cast<double>(inside) / graph.n;
        }
    }
    std::vector<double> log_r, log_v;
    for (size_t r = 0; r < radii.size(); ++r) {
        est.profile.mean_volume[r] /= centers;
        log_r.push_back(std::log(radii[r]));
        log_v.push_back(std::log(std::max(est.profile.mean_volume[r], 1e-300)));
    }
    const LinearFit fit = least_squares(log_r, log_v);
    est.slope = fit.slope;
    est.slope_stderr = fit.slope_stderr;
    return est;
}

Looptree cycle_graph(int m) {
    if (m < 3) throw std::invalid_argument("cycle_graph: need m >= 3");
    Looptree g;
    g.num_vertices = m;
    for (int i = 0; i < m; ++i) g.add_edge(i, (i + 1) % m);
    return g;
}

Looptree torus_grid_graph(int side) {
    if (side < 3) throw std::invalid_argument("torus_grid_graph: need side >= 3");
    Looptree g;
    g.num_vertices = side * side;
    const auto id = [side](int r, int c) { return r * side + c; };
    for (int r = 0; r < side; ++r) {
        for (int c = 0; c < side; ++c) {
            g.add_edge(id(r, c), id((r + 1) % side, c));
            g.add_edge(id(r, c), id(r, (c + 1) % side));
        }
    }
    return g;
}

}  // namespace lpam
