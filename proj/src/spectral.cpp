#include "regspec/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace regspec {

SpectralDomain SpectralDomain::make(int n, double delta, int n_energy, int n_eta) {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("SpectralDomain: delta in (0,1)");
  SpectralDomain dom;
  dom.delta = delta;
  const double e_max = 1.0 / delta;
  const double eta_min = std::pow(static_cast<double>(n), -1.0 + delta);
  const double eta_max = 1.0 / delta;
  for (int a = 0; a < n_energy; ++a) {
    double E = n_energy == 1 ? 0.0 : -e_max + 2.0 * e_max * a / (n_energy - 1);
    for (int b = 0; b < n_eta; ++b) {
      // log-spaced eta
      double f = n_eta == 1 ? 0.0 : static_cast<double>(b) / (n_eta - 1);
      double eta = eta_min * std::pow(eta_max / eta_min, f);
      dom.grid.emplace_back(E, eta);
    }
  }
  return dom;
}

double q_param(int n, int d) {
  if (d < 1 || d > n - 1) throw std::invalid_argument("q_param: need 1 <= d <= N-1");
  return std::sqrt(static_cast<double>(d) * (n - d) / n);
}

Complex semicircle_m(Complex z) {
  const Complex s = std::sqrt(z - 2.0) * std::sqrt(z + 2.0);
  Complex m = 0.5 * (-z + s);
  if (m.imag() < 0.0) m = 0.5 * (-z - s);
  return m;
}

namespace {

Eigen::MatrixXd adjacency_dense(const RegularGraph& g) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.n(), g.n());
  for (int x = 0; x < g.n(); ++x)
    for (int y : g.neighbors(x)) a(x, y) = 1.0;
  return a;
}

}  // namespace

std::vector<double> full_spectrum(const RegularGraph& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(adjacency_dense(g),
                                                    Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw numerical_error("full_spectrum: eigensolver failed");
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + g.n());
  std::sort(ev.begin(), ev.end(), std::greater<double>());
  return ev;
}

ExtremeEigs extreme_eigs(const RegularGraph& g, int k) {
  if (k < 1 || k > 16) throw std::invalid_argument("extreme_eigs: need 1 <= k <= 16");
  const int n = g.n();
  if (k + 2 > n) throw std::invalid_argument("extreme_eigs: k too large for N");

  // Lanczos on A restricted to the orthogonal complement of e. Full
  // reorthogonalization against e and all previous basis vectors.
  const int max_steps = std::min(n - 1, std::max(8 * k + 32, 300));
  const double tol = 1e-9 * std::max(1.0, static_cast<double>(g.degree()));

  Eigen::MatrixXd V(n, max_steps + 1);
  std::vector<double> alpha, beta;

  // deterministic pseudo-random start orthogonal to e
  Eigen::VectorXd v(n);
  for (int x = 0; x < n; ++x) v(x) = std::sin(1.0 + 0.7 * x) + 1e-3 * x;
  v.array() -= v.mean();
  v.normalize();
  V.col(0) = v;

  auto matvec = [&g, n](const Eigen::VectorXd& x) {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
    for (int a = 0; a < n; ++a) {
      double s = 0.0;
      for (int b : g.neighbors(a)) s += x(b);
      y(a) = s;
    }
    return y;
  };

  int m = 0;
  for (int step = 0; step < max_steps; ++step) {
    Eigen::VectorXd w = matvec(V.col(step));
    double a = V.col(step).dot(w);
    alpha.push_back(a);
    w -= a * V.col(step);
    if (step > 0) w -= beta[step - 1] * V.col(step - 1);
    // reorthogonalize against e and the whole basis
    w.array() -= w.mean();
    w -= V.leftCols(step + 1) * (V.leftCols(step + 1).transpose() * w);
    double b = w.norm();
    m = step + 1;
    if (b < 1e-13) break;  // invariant subspace exhausted
    beta.push_back(b);
    V.col(step + 1) = w / b;

    if (m >= 2 * k + 2 && (m % 10 == 0 || step == max_steps - 1)) {
      Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
      for (int r = 0; r < m; ++r) {
        t(r, r) = alpha[r];
        if (r + 1 < m) t(r, r + 1) = t(r + 1, r) = beta[r];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
      bool ok = true;
      for (int r = 0; r < k && ok; ++r) {
        if (std::abs(b * es.eigenvectors()(m - 1, r)) > tol) ok = false;
        if (std::abs(b * es.eigenvectors()(m - 1, m - 1 - r)) > tol) ok = false;
      }
      if (ok) break;
    }
  }

  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
  for (int r = 0; r < m; ++r) {
    t(r, r) = alpha[r];
    if (r + 1 < m) t(r, r + 1) = t(r + 1, r) = beta[r];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw numerical_error("extreme_eigs: tridiagonal solve failed");
  const auto& ritz = es.eigenvalues();  // ascending
  if (m < 2 * k)
    throw numerical_error("extreme_eigs: Krylov space too small");

  ExtremeEigs out;
  for (int r = 0; r < k; ++r) out.top.push_back(ritz(m - 1 - r));
  for (int r = k - 1; r >= 0; --r) out.bottom.push_back(ritz(r));
  std::reverse(out.bottom.begin(), out.bottom.end());
  std::sort(out.bottom.begin(), out.bottom.end(), std::greater<double>());
  return out;
}

GreenEvaluator::GreenEvaluator(const RegularGraph& g) : n_(g.n()), d_(g.degree()) {
  q_ = q_param(n_, d_);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(adjacency_dense(g));
  if (es.info() != Eigen::Success)
    throw numerical_error("GreenEvaluator: eigensolver failed");

  // eigenvalues ascending from Eigen; trivial pair (d, e) is the largest
  const int n = n_;
  const double lam_top = es.eigenvalues()(n - 1);
  if (std::abs(lam_top - d_) > 1e-8 * std::max(1.0, static_cast<double>(d_)))
    throw numerical_error("GreenEvaluator: top eigenvalue differs from d");

  theta_.resize(n - 1);
  vecs_.resize(n, n - 1);
  for (int r = 0; r < n - 1; ++r) {
    theta_(r) = es.eigenvalues()(n - 2 - r) / q_;  // descending, rescaled
    vecs_.col(r) = es.eigenvectors().col(n - 2 - r);
  }
  spectrum_.resize(n);
  for (int r = 0; r < n; ++r) spectrum_[r] = es.eigenvalues()(n - 1 - r);
  deloc_ = es.eigenvectors().cwiseAbs().maxCoeff();
}

Complex GreenEvaluator::gbar(Complex z) const {
  Complex s = 0.0;
  for (int r = 0; r < theta_.size(); ++r) s += 1.0 / (theta_(r) - z);
  return s / static_cast<double>(n_);
}

Eigen::VectorXcd GreenEvaluator::column(int j, Complex z) const {
  Eigen::VectorXcd w(theta_.size());
  for (int r = 0; r < theta_.size(); ++r)
    w(r) = vecs_(j, r) / (theta_(r) - z);
  return vecs_.cast<Complex>() * w;
}

Eigen::MatrixXcd GreenEvaluator::matrix(Complex z) const {
  // G = U diag(1/(theta - z)) U^T, split into two real GEMMs
  const int k = static_cast<int>(theta_.size());
  Eigen::VectorXd wr(k), wi(k);
  for (int r = 0; r < k; ++r) {
    Complex w = 1.0 / (theta_(r) - z);
    wr(r) = w.real();
    wi(r) = w.imag();
  }
  Eigen::MatrixXd gr = vecs_ * wr.asDiagonal() * vecs_.transpose();
  Eigen::MatrixXd gi = vecs_ * wi.asDiagonal() * vecs_.transpose();
  Eigen::MatrixXcd out(n_, n_);
  out.real() = gr;
  out.imag() = gi;
  return out;
}

double GreenEvaluator::delocalization() const { return deloc_; }

double ward_residual(const GreenEvaluator& ge, const SpectralPoint& z, int j) {
  Eigen::VectorXcd col = ge.column(j, z.z());
  double lhs = col.squaredNorm();
  double rhs = col(j).imag() / z.eta;
  return std::abs(lhs - rhs);
}

EntrywiseLawError entrywise_law_error(const GreenEvaluator& ge, const SpectralPoint& z) {
  const Complex m = semicircle_m(z.z());
  Eigen::MatrixXcd g = ge.matrix(z.z());
  g.diagonal().array() -= m;
  const double n_eta = ge.n() * z.eta;
  return {g.cwiseAbs().maxCoeff(),
          std::pow(n_eta, -0.25) + std::pow(static_cast<double>(ge.degree()), -0.25),
          std::pow(n_eta, -0.5) + std::pow(static_cast<double>(ge.degree()), -0.5)};
}

double self_consistent_residual_entry(const GreenEvaluator& ge, const SpectralPoint& z) {
  const Complex zz = z.z();
  Eigen::MatrixXcd g = ge.matrix(zz);
  const Complex gb = ge.gbar(zz);
  Eigen::MatrixXcd p = (zz + gb) * g;
  p.diagonal().array() += 1.0;
  return p.cwiseAbs().maxCoeff();
}

double self_consistent_residual_avg(const GreenEvaluator& ge, const SpectralPoint& z) {
  const Complex gb = ge.gbar(z.z());
  return std::abs(1.0 + z.z() * gb + gb * gb);
}

double power_green_check(const RegularGraph& g, const GreenEvaluator& ge,
                         const SpectralPoint& z, int r) {
  if (r < 1 || r > 4) throw std::invalid_argument("power_green_check: need 1 <= r <= 4");
  if (std::abs(z.E) > 10.0 || z.eta > 10.0)
    throw std::invalid_argument("power_green_check: need |z| <= 10");
  Eigen::MatrixXcd gm = ge.matrix(z.z());
  const double gmax = gm.cwiseAbs().maxCoeff();
  Eigen::MatrixXcd cur = gm;
  Eigen::MatrixXcd next(g.n(), g.n());
  for (int step = 0; step < r; ++step) {
    for (int a = 0; a < g.n(); ++a) {
      Eigen::RowVectorXcd s = Eigen::RowVectorXcd::Zero(g.n());
      for (int b : g.neighbors(a)) s += cur.row(b);
      next.row(a) = s;
    }
    cur.swap(next);
  }
  const double d = g.degree();
  const double denom = (std::pow(d, 0.5 * r) + std::pow(d, r - 1.5)) * gmax;
  return cur.cwiseAbs().maxCoeff() / denom;
}

int window_count(const GreenEvaluator& ge, double a, double b) {
  if (!(a < b)) throw std::invalid_argument("window_count: need a < b");
  int c = 0;
  for (int r = 0; r < ge.nontrivial_eigs().size(); ++r) {
    double t = ge.nontrivial_eigs()(r);
    if (t >= a && t <= b) ++c;
  }
  return c;
}

EdgeSample make_edge_sample(const std::vector<double>& spectrum, int n, int d,
                            int k, std::uint64_t seed) {
  if (k < 2 || k >= n) throw std::invalid_argument("make_edge_sample: bad k");
  EdgeSample s{};
  s.lambda_1 = spectrum[0];
  s.lambda_2 = spectrum[1];
  s.lambda_k = spectrum[k - 1];
  s.lambda_n = spectrum[n - 1];
  s.lambda_n_minus_k = spectrum[n - k];
  s.k = k;
  s.q = q_param(n, d);
  const double n23 = std::pow(static_cast<double>(n), 2.0 / 3.0);
  s.rescaled_top = n23 * (s.lambda_2 / s.q - 2.0);
  s.rescaled_bottom = n23 * (s.lambda_n / s.q + 2.0);
  s.delocalization = 0.0;
  s.seed = seed;
  if (std::abs(s.lambda_1 - d) > 1e-8 * std::max(1.0, static_cast<double>(d)))
    throw numerical_error("make_edge_sample: lambda_1 differs from d");
  return s;
}

}  // namespace regspec
