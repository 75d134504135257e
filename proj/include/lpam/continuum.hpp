#pragma once

#include "lpam/looptree.hpp"
#include "lpam/metric.hpp"
#include "lpam/rng.hpp"

#include <array>
#include <vector>

namespace lpam {

// Metric circles glued sequentially: circle j+1 attaches at a uniform point
// of the union of circles 1..j. Circumferences are the gaps of a Poisson
// process on the half-line with intensity t/2 dt.
struct CircleChain {
    std::vector<double> circle_lengths;
    // attach[j] for j >= 1: (host circle index, arc position on the host);
    // attach[0] is unused. Each circle's own glue point sits at arc 0.
    std::vector<std::pair<int, double>> attach;
};

CircleChain sample_circle_chain(int k, Rng& rng);

// Exact diameter of the chain (dynamic programming over the circle tree).
double chain_diameter(const CircleChain& chain);

// Discretized metric space; points per circle follow the resolution
// (points per unit length). Snapping attachment points to grid points and
// the grid step itself bound the metric error; the largest half-step is
// reported through max_resolution_error.
FiniteMetricSpace discretize_chain(const CircleChain& chain, double resolution,
                                   double* max_resolution_error = nullptr);

FiniteMetricSpace line_breaking_space(int k, Rng& rng, double resolution,
                                      double* max_resolution_error = nullptr);

// Split proportion with density 1/(2 sqrt(x)) on [0, 1] (the square of a
// uniform variate).
double sample_split_alpha(Rng& rng);

// Branch lengths with joint density 16 (l1+l2+l3) exp(-2 (l1+l2+l3)^2):
// total with density 8 s^3 exp(-2 s^2) spread uniformly over the simplex.
std::array<double, 3> sample_triple_lengths(Rng& rng);

// Partial sums of -log of split proportions (exponential increments of
// rate 1/2).
std::vector<double> mass_walk(int steps, Rng& rng);

struct BallProfile {
    std::vector<double> radii;
    std::vector<double> mean_volume;  // across centers, in [0, 1]
};

struct DimensionEstimate {
    double slope = 0.0;
    double slope_stderr = 0.0;
    BallProfile profile;
};

// Log-log slope of the mean empirical ball volume (fraction of vertices
// within distance r of a uniform center) against r.
DimensionEstimate dimension_estimate(const GraphCSR& graph, int centers,
                                     const std::vector<double>& radii, Rng& rng);

// Calibration fixtures.
Looptree cycle_graph(int m);
Looptree torus_grid_graph(int side);

}  // namespace lpam
