#pragma once

#include "lpam/decorated.hpp"
#include "lpam/plane_tree.hpp"
#include "lpam/rational.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace lpam {

// k(k-1)...(k-j+1); 1 for j = 0, 0 once a factor hits zero.
int64_t falling_factorial(int64_t k, int64_t j);

// Sum over injective graph homomorphisms phi of tau into T of the product
// of [deg_T(phi(u))] falling l(u), counting maps (symmetric images count
// with multiplicity). Degrees of planted trees include the plant half-edge.
int64_t d_tau(const DecoratedTree& tau, const PlaneTree& T);

// All universe elements at once. Patterns with at most 4 vertices go
// through closed-form sums over vertices/edges (linear in |T|); larger
// patterns share one embedding enumeration per shape. The two evaluation
// routes are cross-checked in the test suite.
std::vector<int64_t> d_tau_many(const std::vector<DecoratedTree>& taus, const PlaneTree& T);

// Embedding-enumeration route, any pattern size (the reference path).
int64_t d_tau_by_enumeration(const DecoratedTree& tau, const PlaneTree& T);

// Joint disjoint-image version: injective homomorphisms of the disjoint
// union of tau and tau2.
int64_t d_tau_pair(const DecoratedTree& tau, const DecoratedTree& tau2, const PlaneTree& T);

struct RecurrenceCoeffs {
    int growth_weight = 0;                 // weight of tau
    std::map<std::string, Rat> linear;     // code of tau' -> c(tau, tau')
    std::vector<DecoratedTree> reduced;    // one per map entry
};

// Coefficients of the one-step conditional expectation: the observable of
// tau expands as (1 + w/(2n-2)) times itself plus (1/(2n-2)) times this
// combination over strictly smaller decorated trees.
RecurrenceCoeffs recurrence_coeffs(const DecoratedTree& tau);

// Independent oracle: sum over vertices v of deg(v)/(2n-2) times the
// observable evaluated on T with a leaf attached at v, exactly.
// Guards: |T| <= 9, |tau| <= 5.
Rat one_step_expectation(const DecoratedTree& tau, const PlaneTree& T);

enum class ArithmeticMode { Exact, Float64 };

// Normalizers and correction coefficients making
//   alpha_n * (D_tau - sum over tau' < tau of a_n(tau, tau') D_tau')
// a martingale of the attachment chain, tabulated for n in [2, n_max]
// over the reduction closure of tau.
class MartingaleTable {
public:
    static MartingaleTable build(const DecoratedTree& tau, int n_max, ArithmeticMode mode);

    int n_max() const { return n_max_; }
    ArithmeticMode mode() const { return mode_; }
    const DecoratedOrderUniverse& universe() const { return universe_; }
    int tau_index() const { return tau_index_; }

    Rat alpha_exact(int n, int element = -1) const;
    Rat a_exact(int n, int element_i, int element_j) const;
    Rat abar_exact(int n, int element_i, int element_j) const;
    Rat b_exact(int n, int element_i, int element_j) const;
    double alpha(int n, int element = -1) const;
    double a(int n, int element_i, int element_j) const;

    // Martingale value at state T (uses n = |T|).
    Rat value_exact(const PlaneTree& T, int element = -1) const;
    double value(const PlaneTree& T, int element = -1) const;

    // Rows (n, code of tau', a_n(tau, tau')).
    std::string to_csv() const;

private:
    DecoratedOrderUniverse universe_;
    int tau_index_ = 0;
    int n_max_ = 2;
    ArithmeticMode mode_ = ArithmeticMode::Exact;
    int k_ = 0;
    std::vector<Rat> alpha_q_, a_q_, abar_q_, b_q_;
    std::vector<double> alpha_d_, a_d_, abar_d_, b_d_;

    size_t vec_idx(int n, int i) const { return static_cast<size_t>(n - 2) * k_ + i; }
    size_t mat_idx(int n, int i, int j) const {
        return (static_cast<size_t>(n - 2) * k_ + i) * k_ + j;
    }
    void check_n(int n) const;
};

// Streaming max of |a_n(tau, tau')| over all tau' at the given checkpoints
// (float arithmetic; nothing stored between checkpoints).
std::vector<std::pair<int, double>> scan_coefficient_magnitude(const DecoratedTree& tau, int n_max,
                                                               const std::vector<int>& checkpoints);

// A minimal decorated tree whose expected observable differs between the
// two attachment chains at n = max(|S1|, |S2|), found by exact expansion.
// Guarded to seeds of at most 4 vertices by the decorated-universe bounds.
DecoratedTree distinguishing_tau(const PlaneTree& s1, const PlaneTree& s2);

// Second-moment total-variation bound: gap^2 / (2(var1+var2) + gap^2).
double tv_lower_bound(double mean1, double var1, double mean2, double var2);
Rat tv_lower_bound_exact(const Rat& mean1, const Rat& var1, const Rat& mean2, const Rat& var2);

}  // namespace lpam
