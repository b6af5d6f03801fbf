#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace regspec {

// Gauss-Legendre nodes/weights on [a, b]
struct Quadrature {
  std::vector<double> nodes, weights;
};
Quadrature gauss_legendre(int m, double a, double b);

// two-sample Kolmogorov-Smirnov statistic (inputs need not be sorted)
double ks_statistic(std::vector<double> a, std::vector<double> b);

// one-sample KS statistic against a CDF given as a callable
template <class Cdf>
double ks_statistic_cdf(std::vector<double> sample, Cdf&& cdf);

// asymptotic Kolmogorov survival function Q(t) = 2 sum (-1)^{k-1} e^{-2k^2t^2}
double kolmogorov_survival(double t);

// regularized upper incomplete gamma Q(a, x)
double gamma_q(double a, double x);

// chi-square p-value for statistic x with dof degrees of freedom
double chi_square_pvalue(double x, int dof);

// Pearson chi-square statistic for observed counts vs uniform expectation
double chi_square_uniform(const std::vector<long long>& counts, double total);

struct Bootstrap {
  double mean;
  double std_error;
};
// bootstrap standard error of the mean, deterministic in `seed`
Bootstrap bootstrap_mean(const std::vector<double>& sample, int resamples,
                         unsigned long long seed);

double sample_mean(const std::vector<double>& v);
double sample_quantile(std::vector<double> v, double p);

// --- impl ---

template <class Cdf>
double ks_statistic_cdf(std::vector<double> sample, Cdf&& cdf) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    double f = cdf(sample[i]);
    d = std::max(d, std::max(f - i / n, (i + 1) / n - f));
  }
  return d;
}

}  // namespace regspec
