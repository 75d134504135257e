#include "lpam/metric.hpp"

#include "lpam/plane_tree.hpp"
#include "lpam/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace lpam {

void FiniteMetricSpace::set_scale(double s) {
    if (s <= 0) throw std::invalid_argument("set_scale: scale must be positive");
    scale_ = s;
}

void FiniteMetricSpace::validate() const {
    for (int i = 0; i < n_; ++i) {
        if (d(i, i) != 0) throw std::invalid_argument("metric: nonzero diagonal");
        for (int j = i + 1; j < n_; ++j) {
            if (d(i, j) != d(j, i)) throw std::invalid_argument("metric: asymmetric");
            if (d(i, j) <= 0) throw std::invalid_argument("metric: nonpositive off-diagonal");
        }
    }
    const auto check_triple = [&](int i, int j, int k) {
        if (d(i, k) > d(i, j) + d(j, k) + 1e-12 * scale_)
            throw std::invalid_argument("metric: triangle inequality fails");
    };
    if (n_ <= 64) {
        for (int i = 0; i < n_; ++i) {
            for (int j = 0; j < n_; ++j) {
                for (int k = 0; k < n_; ++k) check_triple(i, j, k);
            }
        }
    } else {
        Rng rng(0x7a5u);
        for (int s = 0; s < 200000; ++s) {
            check_triple(static_cast<int>(rng.index(n_)), static_cast<int>(rng.index(n_)),
                         static_cast<int>(rng.index(n_)));
        }
    }
}

double FiniteMetricSpace::diameter() const {
    double m = 0;
    for (int i = 0; i < n_; ++i) {
        for (int j = i + 1; j < n_; ++j) m = std::max(m, d(i, j));
    }
    return m;
}

std::string FiniteMetricSpace::to_csv() const {
    std::ostringstream out;
    out << "# marks=";
    for (size_t i = 0; i < marks_.size(); ++i) out << (i ? ";" : "") << marks_[i];
    out << "\n" << n_ << "\n";
    out.precision(17);
    for (int i = 0; i < n_; ++i) {
        for (int j = i + 1; j < n_; ++j) out << (j > i + 1 ? "," : "") << d(i, j);
        if (i + 1 < n_) out << "\n";
    }
    return out.str();
}

FiniteMetricSpace FiniteMetricSpace::from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("# marks=", 0) != 0)
        throw std::invalid_argument("metric csv: missing marks header");
    std::vector<int> marks;
    {
        std::string rest = line.substr(8);
        std::istringstream ms(rest);
        std::string tok;
        while (std::getline(ms, tok, ';')) {
            if (!tok.empty()) marks.push_back(std::stoi(tok));
        }
    }
    if (!std::getline(in, line)) throw std::invalid_argument("metric csv: missing size");
    const int n = std::stoi(line);
    FiniteMetricSpace space(n);
    space.marks() = marks;
    for (int i = 0; i + 1 < n; ++i) {
        if (!std::getline(in, line)) throw std::invalid_argument("metric csv: missing row");
        std::istringstream row(line);
        std::string tok;
        for (int j = i + 1; j < n; ++j) {
            if (!std::getline(row, tok, ',')) throw std::invalid_argument("metric csv: short row");
            space.set(i, j, std::stod(tok));
        }
    }
    return space;
}

double hausdorff_in_common(const FiniteMetricSpace& space, const std::vector<int>& a,
                           const std::vector<int>& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("hausdorff_in_common: empty set");
    const auto directed = [&](const std::vector<int>& from, const std::vector<int>& to) {
        double worst = 0;
        for (int p : from) {
            double best = std::numeric_limits<double>::infinity();
            for (int q : to) best = std::min(best, space.d(p, q));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

Correspondence identity_correspondence(int n) {
    Correspondence r;
    r.pairs.reserve(n);
    for (int i = 0; i < n; ++i) r.pairs.emplace_back(i, i);
    return r;
}

double gh_upper_from_correspondence(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                                    const Correspondence& r) {
    std::vector<char> cov_x(x.size(), 0), cov_y(y.size(), 0);
    for (const auto& [p, q] : r.pairs) {
        cov_x.at(p) = 1;
        cov_y.at(q) = 1;
    }
    if (std::count(cov_x.begin(), cov_x.end(), 1) != x.size() ||
        std::count(cov_y.begin(), cov_y.end(), 1) != y.size())
        throw std::invalid_argument("gh_upper_from_correspondence: correspondence not total");
    if (x.marks().size() != y.marks().size())
        throw std::invalid_argument("gh_upper_from_correspondence: mark count mismatch");
    for (size_t i = 0; i < x.marks().size(); ++i) {
        const std::pair<int, int> need{x.marks()[i], y.marks()[i]};
        if (std::find(r.pairs.begin(), r.pairs.end(), need) == r.pairs.end())
            throw std::invalid_argument("gh_upper_from_correspondence: marks not paired");
    }
    double dis = 0;
    for (const auto& [p, q] : r.pairs) {
        for (const auto& [p2, q2] : r.pairs) {
            dis = std::max(dis, std::abs(x.d(p, p2) - y.d(q, q2)));
        }
    }
    return dis / 2;
}

namespace {
struct GhSearch {
    const FiniteMetricSpace& x;
    const FiniteMetricSpace& y;
    std::vector<int> f;  // X -> Y
    std::vector<int> g;  // Y -> X
    double best;

    double forced_pairs_ok() {
        // Marks correspond in order; distortion among them is a floor.
        double dis = 0;
        for (size_t i = 0; i < x.marks().size(); ++i) {
            for (size_t j = 0; j < x.marks().size(); ++j) {
                dis = std::max(dis, std::abs(x.d(x.marks()[i], x.marks()[j]) -
                                             y.d(y.marks()[i], y.marks()[j])));
            }
        }
        return dis;
    }

    void assign_g(int j, double cur) {
        if (cur >= best) return;
        if (j == static_cast<int>(g.size())) {
            best = cur;
            return;
        }
        if (g[j] >= 0) {
            assign_g(j + 1, std::max(cur, g_cost(j, g[j])));
            return;
        }
        for (int p = 0; p < x.size(); ++p) {
            const double c = std::max(cur, g_cost(j, p));
            if (c >= best) continue;
            g[j] = p;
            assign_g(j + 1, c);
            g[j] = -1;
        }
    }

    double g_cost(int j, int p) const {
        double c = 0;
        for (int l = 0; l < static_cast<int>(g.size()); ++l) {
            if (l != j && g[l] >= 0) c = std::max(c, std::abs(y.d(j, l) - x.d(p, g[l])));
        }
        // cross distortion against the fully assigned f
        for (int i = 0; i < x.size(); ++i) {
            c = std::max(c, std::abs(x.d(i, p) - y.d(f[i], j)));
        }
        return c;
    }

    void assign_f(int i, double cur) {
        if (cur >= best) return;
        if (i == static_cast<int>(f.size())) {
            assign_g(0, cur);
            return;
        }
        if (f[i] >= 0) {
            assign_f(i + 1, std::max(cur, f_cost(i, f[i])));
            return;
        }
        for (int q = 0; q < y.size(); ++q) {
            const double c = std::max(cur, f_cost(i, q));
            if (c >= best) continue;
            f[i] = q;
            assign_f(i + 1, c);
            f[i] = -1;
        }
    }

    double f_cost(int i, int q) const {
        double c = 0;
        for (int l = 0; l < static_cast<int>(f.size()); ++l) {
            if (l != i && f[l] >= 0) c = std::max(c, std::abs(x.d(i, l) - y.d(q, f[l])));
        }
        return c;
    }
};
}  // namespace

double gh_exact_small(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
    if (x.size() > 7 || y.size() > 7) throw GuardError("gh_exact_small: spaces larger than 7 points");
    if (x.size() == 0 || y.size() == 0) throw std::invalid_argument("gh_exact_small: empty space");
    if (x.marks().size() != y.marks().size())
        throw std::invalid_argument("gh_exact_small: mark count mismatch");
    GhSearch search{x, y, std::vector<int>(x.size(), -1), std::vector<int>(y.size(), -1),
                    std::numeric_limits<double>::infinity()};
    for (size_t m = 0; m < x.marks().size(); ++m) {
        search.f[x.marks()[m]] = y.marks()[m];
        search.g[y.marks()[m]] = x.marks()[m];
    }
    search.assign_f(0, search.forced_pairs_ok());
    return search.best / 2;
}

double net_radius(const FiniteMetricSpace& space, const std::vector<int>& points) {
    if (points.empty()) throw std::invalid_argument("net_radius: empty point list");
    double worst = 0;
    for (int v = 0; v < space.size(); ++v) {
        double nearest = std::numeric_limits<double>::infinity();
        for (int p : points) nearest = std::min(nearest, space.d(v, p));
        worst = std::max(worst, nearest);
    }
    return worst;
}

}  // namespace lpam
