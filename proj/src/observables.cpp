#include "lpam/observables.hpp"

#include "lpam/exact_dist.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lpam {

int64_t falling_factorial(int64_t k, int64_t j) {
    if (k < 0 || j < 0) throw std::invalid_argument("falling_factorial: negative argument");
    int64_t p = 1;
    for (int64_t i = 0; i < j; ++i) {
        if (k - i <= 0) return 0;
        p *= k - i;
    }
    return p;
}

namespace {
// BFS ordering of a pattern so each position extends from an assigned one.
struct PatternPlan {
    std::vector<int> vertex_at;  // position -> pattern vertex
    std::vector<int> parent_pos;
};

PatternPlan plan_pattern(const TreeAdjacency& adj) {
    PatternPlan plan;
    const int k = static_cast<int>(adj.size());
    plan.vertex_at.reserve(k);
    plan.parent_pos.assign(k, -1);
    std::vector<int> pos_of(k, -1);
    plan.vertex_at.push_back(0);
    pos_of[0] = 0;
    for (int head = 0; head < static_cast<int>(plan.vertex_at.size()); ++head) {
        const int v = plan.vertex_at[head];
        for (int u : adj[v]) {
            if (pos_of[u] < 0) {
                pos_of[u] = static_cast<int>(plan.vertex_at.size());
                plan.parent_pos[pos_of[u]] = head;
                plan.vertex_at.push_back(u);
            }
        }
    }
    return plan;
}

struct EmbeddingContext {
    const TreeAdjacency* adj;
    const std::vector<int>* degs;
    std::vector<char> used;
    std::vector<int> image;  // per position
};

// Enumerates injective homomorphisms position by position, with a
// per-position degree floor for pruning; the callback sees the completed
// image vector.
template <typename Fn>
void enumerate_embeddings(const PatternPlan& plan, const std::vector<int>& min_label, EmbeddingContext& ctx,
                          int pos, const Fn& fn) {
    const int k = static_cast<int>(plan.vertex_at.size());
    if (pos == k) {
        fn(ctx.image);
        return;
    }
    if (pos == 0) {
        const int n = static_cast<int>(ctx.adj->size());
        for (int v = 0; v < n; ++v) {
            if (ctx.used[v] || (*ctx.degs)[v] < min_label[0]) continue;
            ctx.used[v] = 1;
            ctx.image[0] = v;
            enumerate_embeddings(plan, min_label, ctx, 1, fn);
            ctx.used[v] = 0;
        }
        return;
    }
    const int around = ctx.image[plan.parent_pos[pos]];
    for (int v : (*ctx.adj)[around]) {
        if (ctx.used[v] || (*ctx.degs)[v] < min_label[pos]) continue;
        ctx.used[v] = 1;
        ctx.image[pos] = v;
        enumerate_embeddings(plan, min_label, ctx, pos + 1, fn);
        ctx.used[v] = 0;
    }
}

std::vector<int> tree_degrees(const PlaneTree& T) { return T.degrees(); }
}  // namespace

int64_t d_tau(const DecoratedTree& tau, const PlaneTree& T) {
    return d_tau_many(std::vector<DecoratedTree>{tau}, T)[0];
}

namespace {
int64_t narrowed(__int128 x, const char* where) {
    if (x > INT64_MAX || x < INT64_MIN) throw std::overflow_error(where);
    return static_cast<int64_t>(x);
}

// Per-vertex falling factorials of the host degrees, for pattern labels.
struct DegreePowers {
    int max_label;
    std::vector<int64_t> ff;  // [v * (max_label + 1) + l]
    DegreePowers(const std::vector<int>& degs, int max_l) : max_label(max_l) {
        ff.resize(degs.size() * (max_l + 1));
        for (size_t v = 0; v < degs.size(); ++v) {
            for (int l = 0; l <= max_l; ++l) ff[v * (max_l + 1) + l] = falling_factorial(degs[v], l);
        }
    }
    int64_t at(int v, int l) const { return ff[static_cast<size_t>(v) * (max_label + 1) + l]; }
};

// Closed-form weighted map counts for tree patterns with <= 4 vertices.
// Images of distinct pattern vertices stay distinct automatically except
// where subtracted explicitly; a tree host has no 3- or 4-cycles.
int64_t d_small_pattern(const DecoratedTree& tau, const TreeAdjacency& host, const std::vector<int>& degs,
                        const DegreePowers& dp) {
    const int n = static_cast<int>(host.size());
    const int k = tau.size();
    __int128 total = 0;
    if (k == 1) {
        const int l = tau.labels[0];
        for (int v = 0; v < n; ++v) total += dp.at(v, l);
        return narrowed(total, "d_tau: single-vertex overflow");
    }
    if (k == 2) {
        const int l0 = tau.labels[0], l1 = tau.labels[1];
        for (int v = 0; v < n; ++v) {
            for (int u : host[v]) total += static_cast<__int128>(dp.at(v, l0)) * dp.at(u, l1);
        }
        return narrowed(total, "d_tau: edge overflow");
    }
    if (k == 3) {
        // Path on 3 vertices; find the center and its end labels.
        int center = 0;
        while (tau.adj[center].size() != 2) ++center;
        const int lc = tau.labels[center];
        const int e1 = tau.labels[tau.adj[center][0]], e2 = tau.labels[tau.adj[center][1]];
        for (int v = 0; v < n; ++v) {
            const int64_t fc = dp.at(v, lc);
            if (fc == 0) continue;
            __int128 s1 = 0, s2 = 0, both = 0;
            for (int u : host[v]) {
                s1 += dp.at(u, e1);
                s2 += dp.at(u, e2);
                both += static_cast<__int128>(dp.at(u, e1)) * dp.at(u, e2);
            }
            total += fc * (s1 * s2 - both);
        }
        return narrowed(total, "d_tau: path3 overflow");
    }
    if (k == 4) {
        int max_deg_in_pattern = 0;
        for (int v = 0; v < 4; ++v) max_deg_in_pattern = std::max<int>(max_deg_in_pattern, tau.adj[v].size());
        if (max_deg_in_pattern == 3) {
            // Star: center plus three leaves mapped to distinct neighbors.
            int center = 0;
            while (tau.adj[center].size() != 3) ++center;
            const int lc = tau.labels[center];
            const int a = tau.labels[tau.adj[center][0]];
            const int b = tau.labels[tau.adj[center][1]];
            const int c = tau.labels[tau.adj[center][2]];
            for (int v = 0; v < n; ++v) {
                const int64_t fc = dp.at(v, lc);
                if (fc == 0) continue;
                __int128 sa = 0, sb = 0, sc = 0, sab = 0, sac = 0, sbc = 0, sabc = 0;
                for (int u : host[v]) {
                    const __int128 fa = dp.at(u, a), fb = dp.at(u, b), fcl = dp.at(u, c);
                    sa += fa;
                    sb += fb;
                    sc += fcl;
                    sab += fa * fb;
                    sac += fa * fcl;
                    sbc += fb * fcl;
                    sabc += fa * fb * fcl;
                }
                total += fc * (sa * sb * sc - sab * sc - sac * sb - sbc * sa + 2 * sabc);
            }
            return narrowed(total, "d_tau: star4 overflow");
        }
        // Path on 4 vertices: ends a, d around the middle edge (b, c).
        int b = 0;
        while (tau.adj[b].size() != 2) ++b;
        int c = tau.adj[b][0];
        if (tau.adj[c].size() != 2) c = tau.adj[b][1];
        const int a = tau.adj[b][0] == c ? tau.adj[b][1] : tau.adj[b][0];
        const int d = tau.adj[c][0] == b ? tau.adj[c][1] : tau.adj[c][0];
        const int lb = tau.labels[b], lc = tau.labels[c], la = tau.labels[a], ld = tau.labels[d];
        // Neighbor sums per vertex for the two end labels.
        std::vector<int64_t> s_la(n, 0), s_ld(n, 0);
        for (int v = 0; v < n; ++v) {
            int64_t x = 0, y = 0;
            for (int u : host[v]) {
                x += dp.at(u, la);
                y += dp.at(u, ld);
            }
            s_la[v] = x;
            s_ld[v] = y;
        }
        for (int v = 0; v < n; ++v) {
            const int64_t fb = dp.at(v, lb);
            if (fb == 0) continue;
            for (int w : host[v]) {
                const int64_t fc = dp.at(w, lc);
                if (fc == 0) continue;
                // In a tree the two ends can never collide.
                total += static_cast<__int128>(fb) * fc * (s_la[v] - dp.at(w, la)) *
                         (s_ld[w] - dp.at(v, ld));
            }
        }
        return narrowed(total, "d_tau: path4 overflow");
    }
    throw std::logic_error("d_small_pattern: pattern too large");
}
}  // namespace

int64_t d_tau_by_enumeration(const DecoratedTree& tau, const PlaneTree& T) {
    if (tau.size() > T.size()) return 0;
    const TreeAdjacency host = adjacency_of(T);
    const std::vector<int> degs = tree_degrees(T);
    const PatternPlan plan = plan_pattern(tau.adj);
    const int k = tau.size();
    std::vector<int> labels_at(k);
    for (int p = 0; p < k; ++p) labels_at[p] = tau.labels[plan.vertex_at[p]];
    int64_t total = 0;
    EmbeddingContext ctx{&host, &degs, std::vector<char>(T.size(), 0), std::vector<int>(k, -1)};
    enumerate_embeddings(plan, labels_at, ctx, 0, [&](const std::vector<int>& image) {
        int64_t prod = 1;
        for (int p = 0; p < k && prod != 0; ++p) prod *= falling_factorial(degs[image[p]], labels_at[p]);
        total += prod;
    });
    return total;
}

std::vector<int64_t> d_tau_many(const std::vector<DecoratedTree>& taus, const PlaneTree& T) {
    const TreeAdjacency host = adjacency_of(T);
    const std::vector<int> degs = tree_degrees(T);
    std::vector<int64_t> out(taus.size(), 0);
    int max_label = 1;
    for (const auto& t : taus) {
        for (int l : t.labels) max_label = std::max(max_label, l);
    }
    const DegreePowers dp(degs, max_label);

    std::map<std::string, std::vector<size_t>> big_groups;
    for (size_t i = 0; i < taus.size(); ++i) {
        if (taus[i].size() > T.size()) continue;
        if (taus[i].size() <= 4) {
            out[i] = d_small_pattern(taus[i], host, degs, dp);
        } else {
            big_groups[taus[i].shape_code()].push_back(i);
        }
    }

    // Larger patterns: one embedding enumeration per shape (normalized
    // vertex order makes same-shape adjacency identical).
    for (const auto& [shape, members] : big_groups) {
        const DecoratedTree& first = taus[members.front()];
        const PatternPlan plan = plan_pattern(first.adj);
        const int k = first.size();
        std::vector<int> min_label(k, INT32_MAX);
        std::vector<std::vector<int>> labels_at(members.size(), std::vector<int>(k));
        for (size_t m = 0; m < members.size(); ++m) {
            for (int p = 0; p < k; ++p) {
                const int l = taus[members[m]].labels[plan.vertex_at[p]];
                labels_at[m][p] = l;
                min_label[p] = std::min(min_label[p], l);
            }
        }
        EmbeddingContext ctx{&host, &degs, std::vector<char>(T.size(), 0), std::vector<int>(k, -1)};
        enumerate_embeddings(plan, min_label, ctx, 0, [&](const std::vector<int>& image) {
            for (size_t m = 0; m < members.size(); ++m) {
                int64_t prod = 1;
                for (int p = 0; p < k && prod != 0; ++p) {
                    prod *= falling_factorial(degs[image[p]], labels_at[m][p]);
                }
                out[members[m]] += prod;
            }
        });
    }
    return out;
}

int64_t d_tau_pair(const DecoratedTree& tau, const DecoratedTree& tau2, const PlaneTree& T) {
    if (tau.size() + tau2.size() > T.size()) return 0;
    const TreeAdjacency host = adjacency_of(T);
    const std::vector<int> degs = tree_degrees(T);
    const PatternPlan plan1 = plan_pattern(tau.adj);
    const PatternPlan plan2 = plan_pattern(tau2.adj);
    std::vector<int> labels1(tau.size()), labels2(tau2.size());
    for (int p = 0; p < tau.size(); ++p) labels1[p] = tau.labels[plan1.vertex_at[p]];
    for (int p = 0; p < tau2.size(); ++p) labels2[p] = tau2.labels[plan2.vertex_at[p]];

    int64_t total = 0;
    EmbeddingContext ctx{&host, &degs, std::vector<char>(T.size(), 0), std::vector<int>(tau.size(), -1)};
    enumerate_embeddings(plan1, labels1, ctx, 0, [&](const std::vector<int>& image1) {
        int64_t prod1 = 1;
        for (int p = 0; p < tau.size() && prod1 != 0; ++p) {
            prod1 *= falling_factorial(degs[image1[p]], labels1[p]);
        }
        if (prod1 == 0) return;
        // Second component on the remaining vertices; ctx.used still holds
        // the first image.
        EmbeddingContext ctx2{&host, &degs, ctx.used, std::vector<int>(tau2.size(), -1)};
        enumerate_embeddings(plan2, labels2, ctx2, 0, [&](const std::vector<int>& image2) {
            int64_t prod2 = prod1;
            for (int p = 0; p < tau2.size() && prod2 != 0; ++p) {
                prod2 *= falling_factorial(degs[image2[p]], labels2[p]);
            }
            total += prod2;
        });
    });
    return total;
}

RecurrenceCoeffs recurrence_coeffs(const DecoratedTree& tau) {
    RecurrenceCoeffs rc;
    rc.growth_weight = tau.weight();
    for (auto& [reduced, coeff] : reduction_contributions(tau)) {
        const std::string code = reduced.code();
        if (rc.linear.emplace(code, Rat(coeff)).second) {
            rc.reduced.push_back(reduced);
        } else {
            rc.linear[code] += coeff;
        }
    }
    return rc;
}

Rat one_step_expectation(const DecoratedTree& tau, const PlaneTree& T) {
    if (T.size() > 9) throw GuardError("one_step_expectation: |T| exceeds 9");
    if (tau.size() > 5) throw GuardError("one_step_expectation: |tau| exceeds 5");
    if (T.size() < 2 || T.planted())
        throw std::invalid_argument("one_step_expectation: T must be non-planted with >= 2 vertices");
    const Rat denom = 2 * T.size() - 2;
    Rat acc = 0;
    for (Vertex v = 0; v < T.size(); ++v) {
        PlaneTree grown = T;
        grown.attach_leaf(v);
        // The enumeration route keeps this oracle independent of the
        // closed-form evaluation used elsewhere.
        acc += Rat(T.degree(v)) * Rat(d_tau_by_enumeration(tau, grown)) / denom;
    }
    return acc;
}

namespace {
template <typename S>
struct Scalar;

template <>
struct Scalar<Rat> {
    static Rat from_ratio(int64_t num, int64_t den) { return Rat(num, den); }
};

template <>
struct Scalar<double> {
    static double from_ratio(int64_t num, int64_t den) {
        return static_cast<double>(num) / static_cast<double>(den);
    }
};

// One row (fixed n) of the coefficient pipeline over a sorted universe.
template <typename S>
struct PipelineRow {
    int n = 2;
    std::vector<S> alpha;  // per element
    std::vector<S> a, abar, b;  // k*k, entry (i, j) nonzero only below diagonal
};

template <typename S>
class Pipeline {
public:
    Pipeline(const DecoratedOrderUniverse& universe) : u_(universe), k_(static_cast<int>(universe.elements.size())) {
        weights_.resize(k_);
        c_.assign(static_cast<size_t>(k_) * k_, S(0));
        for (int i = 0; i < k_; ++i) {
            weights_[i] = u_.elements[i].weight();
            if (weights_[i] >= 2) {
                for (auto& [reduced, coeff] : reduction_contributions(u_.elements[i])) {
                    const int j = u_.require(reduced);
                    c_[static_cast<size_t>(i) * k_ + j] += S(static_cast<int>(coeff));
                }
            }
        }
        row_.n = 2;
        row_.alpha.assign(k_, S(1));
        for (int i = 0; i < k_; ++i) {
            if (weights_[i] == 1) row_.alpha[i] = Scalar<S>::from_ratio(1, 2);
        }
        row_.a.assign(static_cast<size_t>(k_) * k_, S(0));
        row_.abar = row_.a;
        row_.b = row_.a;
    }

    const PipelineRow<S>& row() const { return row_; }
    int k() const { return k_; }

    // Advances the row from n to n+1.
    void step() {
        const int n = row_.n;
        PipelineRow<S> next;
        next.n = n + 1;
        next.alpha.resize(k_);
        for (int i = 0; i < k_; ++i) {
            if (weights_[i] == 1) {
                next.alpha[i] = Scalar<S>::from_ratio(1, 2 * (n + 1) - 2);
            } else {
                next.alpha[i] =
                    row_.alpha[i] * Scalar<S>::from_ratio(2 * n - 2, 2 * n - 2 + weights_[i]);
            }
        }
        // abar accumulates the j = n term, built from the current row.
        next.abar = row_.abar;
        for (int i = 0; i < k_; ++i) {
            if (weights_[i] < 2) continue;
            const S inv = Scalar<S>::from_ratio(1, 2 * n - 2 + weights_[i]);
            for (int j = 0; j < i; ++j) {
                S inner = c_[static_cast<size_t>(i) * k_ + j];
                for (int t = j + 1; t < i; ++t) {
                    const S& ct = c_[static_cast<size_t>(i) * k_ + t];
                    if (ct == S(0)) continue;
                    const S& bt = row_.b[static_cast<size_t>(t) * k_ + j];
                    if (bt == S(0)) continue;
                    inner += ct * bt;
                }
                if (inner == S(0)) continue;
                next.abar[static_cast<size_t>(i) * k_ + j] +=
                    inv * inner * row_.alpha[i] / row_.alpha[j];
            }
        }
        // a from abar by the triangular recursion (expanding the lower
        // martingales, whose own corrections enter subtracted), then b as
        // the inverse's above-diagonal entries.
        next.a.assign(static_cast<size_t>(k_) * k_, S(0));
        next.b.assign(static_cast<size_t>(k_) * k_, S(0));
        for (int i = 0; i < k_; ++i) {
            for (int j = 0; j < i; ++j) {
                S acc = next.abar[static_cast<size_t>(i) * k_ + j] * next.alpha[j] / next.alpha[i];
                for (int t = j + 1; t < i; ++t) {
                    const S& ab = next.abar[static_cast<size_t>(i) * k_ + t];
                    if (ab == S(0)) continue;
                    const S& at = next.a[static_cast<size_t>(t) * k_ + j];
                    if (at == S(0)) continue;
                    acc -= ab * next.alpha[t] / next.alpha[i] * at;
                }
                next.a[static_cast<size_t>(i) * k_ + j] = acc;
            }
        }
        for (int i = 0; i < k_; ++i) {
            for (int j = 0; j < i; ++j) {
                S acc = next.a[static_cast<size_t>(i) * k_ + j];
                for (int t = j + 1; t < i; ++t) {
                    const S& at = next.a[static_cast<size_t>(i) * k_ + t];
                    if (at == S(0)) continue;
                    const S& bt = next.b[static_cast<size_t>(t) * k_ + j];
                    if (bt == S(0)) continue;
                    acc += at * bt;
                }
                next.b[static_cast<size_t>(i) * k_ + j] = acc;
            }
        }
        row_ = std::move(next);
    }

private:
    const DecoratedOrderUniverse& u_;
    int k_;
    std::vector<int> weights_;
    std::vector<S> c_;
    PipelineRow<S> row_;
};
}  // namespace

MartingaleTable MartingaleTable::build(const DecoratedTree& tau, int n_max, ArithmeticMode mode) {
    if (n_max < 2) throw std::invalid_argument("MartingaleTable: n_max must be >= 2");
    MartingaleTable table;
    table.universe_ = reduction_closure(tau);
    table.tau_index_ = table.universe_.require(tau);
    table.n_max_ = n_max;
    table.mode_ = mode;
    table.k_ = static_cast<int>(table.universe_.elements.size());
    const size_t rows = static_cast<size_t>(n_max - 1);
    const size_t kk = static_cast<size_t>(table.k_) * table.k_;
    if (mode == ArithmeticMode::Exact) {
        Pipeline<Rat> pipe(table.universe_);
        table.alpha_q_.resize(rows * table.k_);
        table.a_q_.resize(rows * kk);
        table.abar_q_.resize(rows * kk);
        table.b_q_.resize(rows * kk);
        for (int n = 2; n <= n_max; ++n) {
            if (n > 2) pipe.step();
            const auto& r = pipe.row();
            std::copy(r.alpha.begin(), r.alpha.end(), table.alpha_q_.begin() + (n - 2) * table.k_);
            std::copy(r.a.begin(), r.a.end(), table.a_q_.begin() + (n - 2) * kk);
            std::copy(r.abar.begin(), r.abar.end(), table.abar_q_.begin() + (n - 2) * kk);
            std::copy(r.b.begin(), r.b.end(), table.b_q_.begin() + (n - 2) * kk);
        }
    } else {
        Pipeline<double> pipe(table.universe_);
        table.alpha_d_.resize(rows * table.k_);
        table.a_d_.resize(rows * kk);
        table.abar_d_.resize(rows * kk);
        table.b_d_.resize(rows * kk);
        for (int n = 2; n <= n_max; ++n) {
            if (n > 2) pipe.step();
            const auto& r = pipe.row();
            std::copy(r.alpha.begin(), r.alpha.end(), table.alpha_d_.begin() + (n - 2) * table.k_);
            std::copy(r.a.begin(), r.a.end(), table.a_d_.begin() + (n - 2) * kk);
            std::copy(r.abar.begin(), r.abar.end(), table.abar_d_.begin() + (n - 2) * kk);
            std::copy(r.b.begin(), r.b.end(), table.b_d_.begin() + (n - 2) * kk);
        }
    }
    return table;
}

void MartingaleTable::check_n(int n) const {
    if (n < 2 || n > n_max_) throw std::invalid_argument("MartingaleTable: n outside [2, n_max]");
}

Rat MartingaleTable::alpha_exact(int n, int element) const {
    check_n(n);
    if (mode_ != ArithmeticMode::Exact) throw std::invalid_argument("table not in exact mode");
    return alpha_q_[vec_idx(n, element < 0 ? tau_index_ : element)];
}

Rat MartingaleTable::a_exact(int n, int i, int j) const {
    check_n(n);
    if (mode_ != ArithmeticMode::Exact) throw std::invalid_argument("table not in exact mode");
    return a_q_[mat_idx(n, i, j)];
}

Rat MartingaleTable::abar_exact(int n, int i, int j) const {
    check_n(n);
    if (mode_ != ArithmeticMode::Exact) throw std::invalid_argument("table not in exact mode");
    return abar_q_[mat_idx(n, i, j)];
}

Rat MartingaleTable::b_exact(int n, int i, int j) const {
    check_n(n);
    if (mode_ != ArithmeticMode::Exact) throw std::invalid_argument("table not in exact mode");
    return b_q_[mat_idx(n, i, j)];
}

double MartingaleTable::alpha(int n, int element) const {
    check_n(n);
    const int i = element < 0 ? tau_index_ : element;
    return mode_ == ArithmeticMode::Exact ? to_double(alpha_q_[vec_idx(n, i)]) : alpha_d_[vec_idx(n, i)];
}

double MartingaleTable::a(int n, int i, int j) const {
    check_n(n);
    return mode_ == ArithmeticMode::Exact ? to_double(a_q_[mat_idx(n, i, j)]) : a_d_[mat_idx(n, i, j)];
}

Rat MartingaleTable::value_exact(const PlaneTree& T, int element) const {
    if (mode_ != ArithmeticMode::Exact) throw std::invalid_argument("table not in exact mode");
    const int n = T.size();
    check_n(n);
    const int i = element < 0 ? tau_index_ : element;
    const std::vector<int64_t> d = d_tau_many(universe_.elements, T);
    Rat acc = Rat(d[i]);
    for (int j = 0; j < i; ++j) {
        const Rat& anj = a_q_[mat_idx(n, i, j)];
        if (anj != 0) acc -= anj * Rat(d[j]);
    }
    return alpha_q_[vec_idx(n, i)] * acc;
}

double MartingaleTable::value(const PlaneTree& T, int element) const {
    const int n = T.size();
    check_n(n);
    const int i = element < 0 ? tau_index_ : element;
    const std::vector<int64_t> d = d_tau_many(universe_.elements, T);
    double acc = static_cast<double>(d[i]);
    for (int j = 0; j < i; ++j) acc -= a(n, i, j) * static_cast<double>(d[j]);
    return alpha(n, i) * acc;
}

std::string MartingaleTable::to_csv() const {
    std::ostringstream out;
    out << "n,tau_prime,a_n\n";
    for (int n = 2; n <= n_max_; ++n) {
        for (int j = 0; j < k_; ++j) {
            if (j == tau_index_) continue;
            out << n << ",\"" << universe_.elements[j].code() << "\"," << a(n, tau_index_, j) << "\n";
        }
    }
    return out.str();
}

std::vector<std::pair<int, double>> scan_coefficient_magnitude(const DecoratedTree& tau, int n_max,
                                                               const std::vector<int>& checkpoints) {
    DecoratedOrderUniverse universe = reduction_closure(tau);
    const int tau_idx = universe.require(tau);
    Pipeline<double> pipe(universe);
    std::vector<std::pair<int, double>> out;
    for (int n = 2; n <= n_max; ++n) {
        if (n > 2) pipe.step();
        if (std::find(checkpoints.begin(), checkpoints.end(), n) == checkpoints.end()) continue;
        double mx = 0;
        for (int j = 0; j < pipe.k(); ++j) {
            mx = std::max(mx, std::abs(pipe.row().a[static_cast<size_t>(tau_idx) * pipe.k() + j]));
        }
        out.emplace_back(n, mx);
    }
    return out;
}

DecoratedTree distinguishing_tau(const PlaneTree& s1, const PlaneTree& s2) {
    if (s1.planted() || s2.planted()) throw std::invalid_argument("distinguishing_tau: seeds must be non-planted");
    if (s1.size() < 3 || s2.size() < 3)
        throw std::invalid_argument("distinguishing_tau: seeds need >= 3 vertices");
    if (canonical_code(s1) == canonical_code(s2))
        throw std::invalid_argument("distinguishing_tau: seeds are isomorphic");
    const int n0 = std::max(s1.size(), s2.size());
    if (2 * n0 - 2 > 6) throw GuardError("distinguishing_tau: seeds larger than 4 vertices exceed universe guard");

    const ExactDistribution law1 = exact_step_distribution(s1, n0);
    const ExactDistribution law2 = exact_step_distribution(s2, n0);
    const DecoratedOrderUniverse universe = enumerate_decorated(2 * n0 - 2, n0);
    for (const DecoratedTree& cand : universe.elements) {
        Rat e1 = 0, e2 = 0;
        for (const auto& [code, p] : law1.mass) e1 += p * Rat(d_tau(cand, law1.reps.at(code)));
        for (const auto& [code, p] : law2.mass) e2 += p * Rat(d_tau(cand, law2.reps.at(code)));
        if (e1 != e2) return cand;
    }
    throw std::logic_error("distinguishing_tau: no witness found in universe");
}

double tv_lower_bound(double mean1, double var1, double mean2, double var2) {
    if (var1 < 0 || var2 < 0) throw std::invalid_argument("tv_lower_bound: negative variance");
    const double gap = mean1 - mean2;
    const double denom = 2 * (var1 + var2) + gap * gap;
    return denom == 0 ? 0.0 : gap * gap / denom;
}

Rat tv_lower_bound_exact(const Rat& mean1, const Rat& var1, const Rat& mean2, const Rat& var2) {
    if (var1 < 0 || var2 < 0) throw std::invalid_argument("tv_lower_bound: negative variance");
    const Rat gap = mean1 - mean2;
    const Rat denom = 2 * (var1 + var2) + gap * gap;
    return denom == 0 ? Rat(0) : gap * gap / denom;
}

}  // namespace lpam
