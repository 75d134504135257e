#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace lpam {

// Streaming mean/variance (Welford).
class MomentAccumulator {
public:
    void add(double x) {
        ++n_;
        const double d = x - mean_;
        mean_ += d / static_cast<double>(n_);
        m2_ += d * (x - mean_);
    }
    size_t count() const { return n_; }
    double mean() const { return mean_; }
    double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
    double stderr_of_mean() const;

private:
    size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
};

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

// Kolmogorov asymptotic tail Q(lambda) = 2 * sum_{j>=1} (-1)^{j-1} exp(-2 j^2 lambda^2).
double kolmogorov_tail(double lambda);

// One-sample KS test against a continuous CDF; returns the asymptotic p-value.
double ks_test_pvalue(std::vector<double> samples, const std::function<double(double)>& cdf);

// Two-sample KS p-value.
double ks_two_sample_pvalue(std::vector<double> a, std::vector<double> b);

// Chi-square goodness of fit. `expected` are expected counts (same total as observed).
double chi_square_pvalue(const std::vector<double>& observed, const std::vector<double>& expected);

double chi_square_sf(double statistic, int dof);

double beta_cdf(double x, double a, double b);

// Adaptive Simpson quadrature with absolute tolerance.
double integrate(const std::function<double(double)>& f, double lo, double hi, double tol);

double median(std::vector<double> v);

// Lag-1 sample autocorrelation.
double autocorrelation_lag1(const std::vector<double>& v);

}  // namespace lpam
