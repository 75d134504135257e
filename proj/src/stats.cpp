#include "lpam/stats.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lpam {

double MomentAccumulator::stderr_of_mean() const {
    if (n_ < 2) return 0.0;
    return std::sqrt(variance() / static_cast<double>(n_));
}

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("least_squares: need >= 2 points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0) throw std::invalid_argument("least_squares: degenerate x range");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss_res += r * r;
    }
    if (x.size() > 2) fit.slope_stderr = std::sqrt(ss_res / (n - 2.0) / sxx);
    return fit;
}

double kolmogorov_tail(double lambda) {
    if (lambda <= 0) return 1.0;
    double sum = 0.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        sum += (j % 2 == 1 ? term : -term);
        if (term < 1e-16) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

double ks_test_pvalue(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_test_pvalue: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    const double sn = std::sqrt(n);
    return kolmogorov_tail((sn + 0.12 + 0.11 / sn) * d);
}

double ks_two_sample_pvalue(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample_pvalue: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    const double ne = std::sqrt(na * nb / (na + nb));
    return kolmogorov_tail((ne + 0.12 + 0.11 / ne) * d);
}

double chi_square_sf(double statistic, int dof) {
    if (dof <= 0) throw std::invalid_argument("chi_square_sf: dof must be positive");
    return boost::math::gamma_q(dof / 2.0, statistic / 2.0);
}

double chi_square_pvalue(const std::vector<double>& observed, const std::vector<double>& expected) {
    if (observed.size() != expected.size() || observed.empty())
        throw std::invalid_argument("chi_square_pvalue: size mismatch");
    double stat = 0.0;
    int dof = -1;
    for (size_t i = 0; i < observed.size(); ++i) {
        if (expected[i] <= 0) throw std::invalid_argument("chi_square_pvalue: nonpositive expected count");
        const double d = observed[i] - expected[i];
        stat += d * d / expected[i];
        ++dof;
    }
    if (dof == 0) return 1.0;
    return chi_square_sf(stat, dof);
}

double beta_cdf(double x, double a, double b) {
    if (x <= 0) return 0.0;
    if (x >= 1) return 1.0;
    return boost::math::ibeta(a, b, x);
}

namespace {
double simpson(const std::function<double(double)>& f, double a, double m, double b, double fa, double fm,
               double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(const std::function<double(double)>& f, double a, double m, double b, double fa, double fm,
                double fb, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(f, a, lm, m, fa, flm, fm);
    const double right = simpson(f, m, rm, b, fm, frm, fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adaptive(f, a, lm, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive(f, m, rm, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}
}  // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi, double tol) {
    const double m = 0.5 * (lo + hi);
    const double fa = f(lo), fm = f(m), fb = f(hi);
    return adaptive(f, lo, m, hi, fa, fm, fb, simpson(f, lo, m, hi, fa, fm, fb), tol, 50);
}

double median(std::vector<double> v) {
    if (v.empty()) throw std::invalid_argument("median: empty");
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double autocorrelation_lag1(const std::vector<double>& v) {
    if (v.size() < 3) throw std::invalid_argument("autocorrelation_lag1: too few samples");
    double mean = 0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double num = 0, den = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        const double d = v[i] - mean;
        den += d * d;
        if (i + 1 < v.size()) num += d * (v[i + 1] - mean);
    }
    return num / den;
}

}  // namespace lpam
