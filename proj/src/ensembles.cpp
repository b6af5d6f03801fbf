#include "regspec/ensembles.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "regspec/spectral.hpp"
#include "regspec/stats.hpp"

namespace regspec {

std::vector<double> goe_tridiagonal_spectrum(int n, Rng& rng) {
  // Dumitriu-Edelman beta-Hermite model at beta = 1, scaled by 1/sqrt(N):
  // diagonal N(0, 2/N), off-diagonal chi_{N-1}, ..., chi_1 over sqrt(N)
  Eigen::VectorXd diag(n), sub(std::max(n - 1, 0));
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < n; ++i) diag(i) = std::sqrt(2.0) * rng.next_normal() * scale;
  for (int i = 0; i < n - 1; ++i) sub(i) = rng.next_chi(n - 1 - i) * scale;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw numerical_error("goe_tridiagonal_spectrum: solver failed");
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + n);
  std::sort(ev.begin(), ev.end(), std::greater<double>());
  return ev;
}

std::vector<double> goe_dense_spectrum(int n, Rng& rng) {
  Eigen::MatrixXd h(n, n);
  const double off = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < n; ++i) {
    h(i, i) = std::sqrt(2.0) * off * rng.next_normal();
    for (int j = i + 1; j < n; ++j) h(i, j) = h(j, i) = off * rng.next_normal();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw numerical_error("goe_dense_spectrum: solver failed");
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + n);
  std::sort(ev.begin(), ev.end(), std::greater<double>());
  return ev;
}

GoeEdge goe_edge_sample(int n, int k, Rng& rng) {
  if (k < 1 || k > 16 || k > n) throw std::invalid_argument("goe_edge_sample: bad k");
  auto ev = goe_tridiagonal_spectrum(n, rng);
  GoeEdge out;
  out.top.assign(ev.begin(), ev.begin() + k);
  out.bottom.assign(ev.end() - k, ev.end());
  return out;
}

Eigen::MatrixXd constrained_goe(int n, Rng& rng) {
  Eigen::MatrixXd h(n, n);
  const double off = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < n; ++i) {
    h(i, i) = std::sqrt(2.0) * off * rng.next_normal();
    for (int j = i + 1; j < n; ++j) h(i, j) = h(j, i) = off * rng.next_normal();
  }
  // W = Pperp H Pperp via rank-one updates, O(N^2)
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  Eigen::VectorXd r = h * ones / n;          // H e e^T scaled
  double mean = r.sum() / n;                 // e^T H e / N
  Eigen::MatrixXd w = h;
  w.noalias() -= r * ones.transpose();
  w.noalias() -= ones * r.transpose();
  w.noalias() += (mean)*ones * ones.transpose();
  return w;
}

// --- Tw1Table ---------------------------------------------------------------

Tw1Table::Tw1Table(std::vector<std::pair<double, double>> grid)
    : grid_(std::move(grid)) {
  if (grid_.size() < 4) throw std::invalid_argument("Tw1Table: grid too small");
  for (std::size_t i = 1; i < grid_.size(); ++i) {
    if (!(grid_[i].first > grid_[i - 1].first))
      throw std::invalid_argument("Tw1Table: abscissae not increasing");
    if (grid_[i].second < grid_[i - 1].second - 1e-12)
      throw std::invalid_argument("Tw1Table: values not monotone");
  }
  // Fritsch-Carlson monotone tangents
  const std::size_t n = grid_.size();
  std::vector<double> d(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i)
    d[i] = (grid_[i + 1].second - grid_[i].second) /
           (grid_[i + 1].first - grid_[i].first);
  slopes_.resize(n);
  slopes_[0] = d[0];
  slopes_[n - 1] = d[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i)
    slopes_[i] = (d[i - 1] * d[i] <= 0.0) ? 0.0 : 2.0 * d[i - 1] * d[i] / (d[i - 1] + d[i]);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (d[i] == 0.0) {
      slopes_[i] = slopes_[i + 1] = 0.0;
      continue;
    }
    double a = slopes_[i] / d[i], b = slopes_[i + 1] / d[i];
    double s = a * a + b * b;
    if (s > 9.0) {
      double t = 3.0 / std::sqrt(s);
      slopes_[i] = t * a * d[i];
      slopes_[i + 1] = t * b * d[i];
    }
  }
}

Tw1Table Tw1Table::load(const std::string& csv_path) {
  std::ifstream is(csv_path);
  if (!is) throw std::runtime_error("Tw1Table::load: cannot open " + csv_path);
  std::vector<std::pair<double, double>> grid;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 's') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double s, f;
    if (ls >> s >> f) grid.emplace_back(s, f);
  }
  return Tw1Table(std::move(grid));
}

Tw1Table Tw1Table::load_default() {
  return load(std::string(REGSPEC_DATA_DIR) + "/tw1_cdf.csv");
}

double Tw1Table::cdf(double s) const {
  if (s <= grid_.front().first) return 0.0;
  if (s >= grid_.back().first) return 1.0;
  auto it = std::upper_bound(grid_.begin(), grid_.end(), s,
                             [](double v, const auto& p) { return v < p.first; });
  std::size_t i = static_cast<std::size_t>(it - grid_.begin()) - 1;
  const double h = grid_[i + 1].first - grid_[i].first;
  const double t = (s - grid_[i].first) / h;
  const double y0 = grid_[i].second, y1 = grid_[i + 1].second;
  const double m0 = slopes_[i] * h, m1 = slopes_[i + 1] * h;
  const double t2 = t * t, t3 = t2 * t;
  double v = (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * m0 +
             (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * m1;
  return std::clamp(v, 0.0, 1.0);
}

double Tw1Table::mean() const {
  // int s dF = [s F] - int F over the grid span; tail mass beyond it is below
  // the table's clamp tolerance
  const double a = grid_.front().first, b = grid_.back().first;
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < grid_.size(); ++i)
    integral += 0.5 * (grid_[i].second + grid_[i + 1].second) *
                (grid_[i + 1].first - grid_[i].first);
  return b * grid_.back().second - a * grid_.front().second - integral;
}

double Tw1Table::median() const {
  double lo = grid_.front().first, hi = grid_.back().first;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (cdf(mid) < 0.5 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// --- DBM --------------------------------------------------------------------

namespace {

// N int Gbar dx from eigenvalues and squared overlaps with e
std::complex<double> edge_integral_from_eigs(const Eigen::VectorXd& eigs,
                                             const Eigen::VectorXd& overlap,
                                             double mu, double kappa_const,
                                             int quad_points) {
  const int n = static_cast<int>(eigs.size());
  const double n23 = std::pow(static_cast<double>(n), -2.0 / 3.0);
  const double kappa = kappa_const * n23;
  const double upper = std::pow(static_cast<double>(n), -2.0 / 3.0 + mu);
  const double eta = std::pow(static_cast<double>(n), -2.0 / 3.0 - mu);
  if (!(kappa < upper))
    throw std::invalid_argument("dbm_edge_integral: empty window, raise mu");

  Quadrature q = gauss_legendre(quad_points, kappa, upper);
  std::complex<double> total = 0.0;
  for (int a = 0; a < quad_points; ++a) {
    const std::complex<double> z(2.0 + q.nodes[a], eta);
    std::complex<double> gbar = 0.0;
    for (int r = 0; r < n; ++r)
      gbar += (1.0 - overlap(r)) / (eigs(r) - z);
    total += q.weights[a] * gbar;  // Gbar = N^{-1} tr, times N cancels
  }
  return total;
}

}  // namespace

std::complex<double> dbm_edge_integral(const Eigen::MatrixXd& a_t, double mu,
                                       double kappa_const, int quad_points) {
  const int n = static_cast<int>(a_t.rows());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a_t);
  if (es.info() != Eigen::Success)
    throw numerical_error("dbm_edge_integral: eigensolver failed");
  Eigen::VectorXd e =
      Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  Eigen::VectorXd overlap = (es.eigenvectors().transpose() * e).array().square();
  return edge_integral_from_eigs(es.eigenvalues(), overlap, mu, kappa_const,
                                 quad_points);
}

DbmPath dbm_path(const RegularGraph& g, const std::vector<double>& times,
                 const DbmOptions& opts, Rng& rng) {
  if (times.empty() || times.front() != 0.0)
    throw std::invalid_argument("dbm_path: times must start at 0");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw std::invalid_argument("dbm_path: times must be increasing");
  if (times.back() > 1.0) throw std::invalid_argument("dbm_path: max t is 1");

  const int n = g.n();
  const double q = q_param(n, g.degree());
  Eigen::MatrixXd a0 = Eigen::MatrixXd::Zero(n, n);
  for (int x = 0; x < n; ++x)
    for (int y : g.neighbors(x)) a0(x, y) = 1.0 / q;

  Eigen::MatrixXd w;
  if (opts.zero_noise)
    w = Eigen::MatrixXd::Zero(n, n);
  else
    w = constrained_goe(n, rng);

  DbmPath path;
  path.times = times;
  Eigen::VectorXd e =
      Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  for (double t : times) {
    Eigen::MatrixXd a_t = std::exp(-t / 2.0) * a0 + std::sqrt(1.0 - std::exp(-t)) * w;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a_t);
    if (es.info() != Eigen::Success)
      throw numerical_error("dbm_path: eigensolver failed at t=" + std::to_string(t));
    const double top = es.eigenvalues()(n - 1);
    const double second = es.eigenvalues()(n - 2);
    // the trivial direction e^{-t/2} d/q must still dominate
    const double trivial = std::exp(-t / 2.0) * g.degree() / q;
    if (top < second || std::abs(top - trivial) > 0.5 * (trivial - 2.0))
      throw numerical_error("dbm_path: trivial eigenvalue no longer dominant");
    path.xi1.push_back(top);
    path.xi2.push_back(second);
    Eigen::VectorXd overlap = (es.eigenvectors().transpose() * e).array().square();
    std::complex<double> integral = edge_integral_from_eigs(
        es.eigenvalues(), overlap, opts.mu, opts.kappa_const, opts.quad_points);
    path.integral.push_back(integral);
    path.x_t.push_back(integral.imag());

    const double n23 = std::pow(static_cast<double>(n), -2.0 / 3.0);
    path.probe_z = {2.0 + n23, n23};
    std::complex<double> gbar = 0.0;
    for (int r = 0; r < n; ++r)
      gbar += (1.0 - overlap(r)) / (es.eigenvalues()(r) - path.probe_z);
    path.gbar_probe.push_back(gbar / static_cast<double>(n));
  }
  return path;
}

}  // namespace regspec
