#include "regspec/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "regspec/rng.hpp"

namespace regspec {

Quadrature gauss_legendre(int m, double a, double b) {
  // Newton iteration on P_m with the three-term recurrence
  Quadrature q;
  q.nodes.resize(m);
  q.weights.resize(m);
  const double pi = 3.14159265358979323846;
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (m + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = m * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    q.nodes[i] = 0.5 * (b - a) * (-x) + 0.5 * (a + b);
    q.nodes[m - 1 - i] = 0.5 * (b - a) * x + 0.5 * (a + b);
    q.weights[i] = q.weights[m - 1 - i] = 0.5 * (b - a) * w;
  }
  return q;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() -
                             static_cast<double>(j) / b.size()));
  }
  return d;
}

double kolmogorov_survival(double t) {
  if (t <= 0.0) return 1.0;
  double s = 0.0;
  for (int k = 1; k <= 100; ++k) {
    double term = 2.0 * std::exp(-2.0 * k * k * t * t);
    if (k % 2 == 0) term = -term;
    s += term;
    if (std::abs(term) < 1e-16) break;
  }
  return std::clamp(s, 0.0, 1.0);
}

namespace {

double gamma_p_series(double a, double x) {
  double sum = 1.0 / a, term = sum;
  for (int k = 1; k < 1000; ++k) {
    term *= x / (a + k);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_contfrac(double a, double x) {
  // Lentz's algorithm
  const double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int k = 1; k < 1000; ++k) {
    double an = -k * (k - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_q(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_q: bad arguments");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_contfrac(a, x);
}

double chi_square_pvalue(double x, int dof) {
  return gamma_q(0.5 * dof, 0.5 * x);
}

double chi_square_uniform(const std::vector<long long>& counts, double total) {
  const double expect = total / counts.size();
  double x = 0.0;
  for (long long c : counts) {
    double diff = c - expect;
    x += diff * diff / expect;
  }
  return x;
}

Bootstrap bootstrap_mean(const std::vector<double>& sample, int resamples,
                         unsigned long long seed) {
  if (sample.empty()) throw std::invalid_argument("bootstrap_mean: empty sample");
  Rng rng(seed);
  const std::size_t n = sample.size();
  std::vector<double> means(resamples);
  for (int r = 0; r < resamples; ++r) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += sample[rng.next_below(n)];
    means[r] = s / n;
  }
  double m = sample_mean(means);
  double var = 0.0;
  for (double v : means) var += (v - m) * (v - m);
  return {sample_mean(sample), std::sqrt(var / (resamples - 1))};
}

double sample_mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / v.size();
}

double sample_quantile(std::vector<double> v, double p) {
  if (v.empty()) throw std::invalid_argument("sample_quantile: empty");
  std::sort(v.begin(), v.end());
  double idx = p * (v.size() - 1);
  std::size_t lo = static_cast<std::size_t>(idx);
  if (lo + 1 >= v.size()) return v.back();
  double f = idx - lo;
  return v[lo] * (1.0 - f) + v[lo + 1] * f;
}

}  // namespace regspec
