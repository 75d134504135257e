#pragma once

#include <string>
#include <vector>

namespace lpam {

// Finite point set with a symmetric distance table, optional ordered marks,
// and a lazily applied scale factor.
class FiniteMetricSpace {
public:
    FiniteMetricSpace() = default;
    explicit FiniteMetricSpace(int n) : n_(n), table_(static_cast<size_t>(n) * n, 0.0) {}

    int size() const { return n_; }
    double d(int i, int j) const { return scale_ * table_[static_cast<size_t>(i) * n_ + j]; }
    void set(int i, int j, double v) {
        table_[static_cast<size_t>(i) * n_ + j] = v;
        table_[static_cast<size_t>(j) * n_ + i] = v;
    }
    double scale() const { return scale_; }
    void set_scale(double s);

    std::vector<int>& marks() { return marks_; }
    const std::vector<int>& marks() const { return marks_; }

    // Symmetry, zero diagonal, identity of indiscernibles, triangle
    // inequality (exhaustive for small spaces, sampled otherwise).
    void validate() const;

    double diameter() const;

    // Condensed upper-triangular CSV with a mark-naming header.
    std::string to_csv() const;
    static FiniteMetricSpace from_csv(const std::string& text);

private:
    int n_ = 0;
    std::vector<double> table_;
    std::vector<int> marks_;
    double scale_ = 1.0;
};

// Hausdorff distance between two subsets within the same space.
double hausdorff_in_common(const FiniteMetricSpace& space, const std::vector<int>& a,
                           const std::vector<int>& b);

// Relation between two point sets, total on both sides.
struct Correspondence {
    std::vector<std::pair<int, int>> pairs;
};

Correspondence identity_correspondence(int n);

// Half the distortion of the correspondence: an upper bound for the
// (marks-pointed) Gromov-Hausdorff distance.
double gh_upper_from_correspondence(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                                    const Correspondence& r);

// Exact Gromov-Hausdorff distance by branch-and-bound over pairs of maps
// (a correspondence of minimal distortion is the graph of such a pair).
// Marked points are forced to correspond in order. Guard: sizes <= 7.
double gh_exact_small(const FiniteMetricSpace& x, const FiniteMetricSpace& y);

// Smallest eps such that every point lies within eps of the given points.
double net_radius(const FiniteMetricSpace& space, const std::vector<int>& points);

}  // namespace lpam
