#include "regspec/tw1_oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "regspec/stats.hpp"

namespace regspec {

namespace {

// Ai(0) and -Ai'(0)
constexpr double kAi0 = 0.355028053887817239;
constexpr double kAip0 = 0.258819403792806798;

double airy_series(double x) {
  // the two series solutions of y'' = x y
  const double x3 = x * x * x;
  double f = 1.0, g = x;
  double tf = 1.0, tg = x;
  for (int k = 1; k <= 80; ++k) {
    tf *= x3 / ((3.0 * k) * (3.0 * k - 1.0));
    tg *= x3 / ((3.0 * k + 1.0) * (3.0 * k));
    f += tf;
    g += tg;
    if (std::abs(tf) < 1e-18 * std::abs(f) && std::abs(tg) < 1e-18 * std::max(1.0, std::abs(g)))
      break;
  }
  return kAi0 * f - kAip0 * g;
}

double airy_asymptotic(double x) {
  const double zeta = (2.0 / 3.0) * x * std::sqrt(x);
  // u_k coefficients of the Poincare expansion
  static const double u[] = {1.0,
                             0.0694444444444444,
                             0.0371334876542950,
                             0.0379930591278053,
                             0.0576491904412977,
                             0.1160990640255154,
                             0.2915913992307505,
                             0.8776669695100169,
                             3.0794530301731669,
                             12.341573362178189,
                             55.622785365491155};
  double sum = 0.0, term_prev = 1e300;
  double zk = 1.0;
  for (std::size_t k = 0; k < sizeof(u) / sizeof(u[0]); ++k) {
    double term = u[k] / zk;
    if (term > term_prev) break;  // asymptotic series: stop at smallest term
    sum += (k % 2 ? -term : term);
    term_prev = term;
    zk *= zeta;
  }
  return std::exp(-zeta) / (2.0 * std::sqrt(3.14159265358979323846) * std::pow(x, 0.25)) * sum;
}

}  // namespace

double airy_ai(double x) {
  if (x < 5.0) return airy_series(x);
  return airy_asymptotic(x);
}

double tw1_oracle_cdf(double s, int m) {
  if (s > 10.0) return 1.0;
  if (s < -12.0) return 0.0;
  // kernel support: Ai(x+y+s) is negligible once x+y+s > ~40
  const double cutoff = std::max(45.0 - s, 20.0);
  Quadrature q = gauss_legendre(m, 0.0, cutoff);
  Eigen::MatrixXd a(m, m);
  std::vector<double> sw(m);
  for (int i = 0; i < m; ++i) sw[i] = std::sqrt(q.weights[i]);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      double v = sw[i] * sw[j] * airy_ai(q.nodes[i] + q.nodes[j] + s);
      a(i, j) = a(j, i) = -v;
    }
  a.diagonal().array() += 1.0;
  double det = a.partialPivLu().determinant();
  if (!(det > -0.5 && det < 1.5))
    throw std::runtime_error("tw1_oracle_cdf: determinant out of range");
  return std::clamp(det, 0.0, 1.0);
}

std::vector<std::pair<double, double>> tw1_generate(double s_min, double s_max,
                                                    double step) {
  std::vector<std::pair<double, double>> out;
  const int count = static_cast<int>(std::round((s_max - s_min) / step)) + 1;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    double s = s_min + i * step;
    out.emplace_back(s, tw1_oracle_cdf(s));
  }
  return out;
}

}  // namespace regspec
