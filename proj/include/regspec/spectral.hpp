#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "regspec/graph.hpp"

namespace regspec {

struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Complex = std::complex<double>;

struct SpectralPoint {
  double E = 0.0;
  double eta = 0.0;  // > 0
  SpectralPoint() = default;
  SpectralPoint(double E_, double eta_) : E(E_), eta(eta_) {
    if (!(eta > 0.0)) throw std::invalid_argument("SpectralPoint: eta must be > 0");
  }
  Complex z() const { return {E, eta}; }
  double kappa() const { return std::abs(E * E - 4.0); }
};

// grid covering {|E| <= 1/delta, N^{-1+delta} <= eta <= 1/delta}
struct SpectralDomain {
  double delta;
  std::vector<SpectralPoint> grid;
  static SpectralDomain make(int n, double delta, int n_energy, int n_eta);
};

// q = sqrt(d(N-d)/N); q^{-1} A has bulk spectrum approaching [-2,2]
double q_param(int n, int d);

// Stieltjes transform of the semicircle law: the root of 1 + z m + m^2 = 0
// with Im m > 0, via the branch sqrt(z-2)*sqrt(z+2) (principal branches)
Complex semicircle_m(Complex z);

// all eigenvalues of A, descending
std::vector<double> full_spectrum(const RegularGraph& g);

struct ExtremeEigs {
  std::vector<double> top;     // lambda_2 >= ... >= lambda_{k+1}
  std::vector<double> bottom;  // lambda_{N-k+1} >= ... >= lambda_N
};
// Nontrivial extreme eigenvalues by Lanczos with full reorthogonalization on
// the subspace orthogonal to e (deflating the trivial pair (d, e)).
ExtremeEigs extreme_eigs(const RegularGraph& g, int k);

// Eigendecomposition-backed evaluator of G(z) = Pperp (q^{-1}A - z)^{-1} Pperp
// and of derived statistics. Immutable; shareable across threads.
class GreenEvaluator {
 public:
  explicit GreenEvaluator(const RegularGraph& g);

  int n() const { return n_; }
  int degree() const { return d_; }
  double q() const { return q_; }

  // q^{-1} lambda_i for i >= 2, descending
  const Eigen::VectorXd& nontrivial_eigs() const { return theta_; }
  // eigenvectors matching nontrivial_eigs(), N x (N-1)
  const Eigen::MatrixXd& nontrivial_vecs() const { return vecs_; }
  // eigenvalues of A itself, descending (including lambda_1 = d)
  const std::vector<double>& spectrum() const { return spectrum_; }

  Complex gbar(Complex z) const;              // N^{-1} Tr G
  Eigen::VectorXcd column(int j, Complex z) const;
  Eigen::MatrixXcd matrix(Complex z) const;   // full G(z)

  double delocalization() const;  // max_i ||u_i||_inf over all eigenvectors

 private:
  int n_, d_;
  double q_;
  Eigen::VectorXd theta_;
  Eigen::MatrixXd vecs_;
  std::vector<double> spectrum_;
  double deloc_;
};

// |sum_i |G_ij|^2 - Im G_jj / eta|
double ward_residual(const GreenEvaluator& ge, const SpectralPoint& z, int j);

struct EntrywiseLawError {
  double observed;      // max_ij |G_ij - delta_ij m|
  double bound_weak;    // (N eta)^{-1/4} + d^{-1/4}
  double bound_strong;  // (N eta)^{-1/2} + d^{-1/2}
};
EntrywiseLawError entrywise_law_error(const GreenEvaluator& ge, const SpectralPoint& z);

// max_ij |delta_ij + z G_ij + Gbar G_ij|
double self_consistent_residual_entry(const GreenEvaluator& ge, const SpectralPoint& z);

// |1 + z Gbar + Gbar^2|
double self_consistent_residual_avg(const GreenEvaluator& ge, const SpectralPoint& z);

// max_ij |(A^r G)_ij| / ((d^{r/2} + d^{r-3/2}) max_ij |G_ij|), 1 <= r <= 4
double power_green_check(const RegularGraph& g, const GreenEvaluator& ge,
                         const SpectralPoint& z, int r);

// number of nontrivial eigenvalues of q^{-1} A in [a, b]
int window_count(const GreenEvaluator& ge, double a, double b);

struct EdgeSample {
  double lambda_1, lambda_2, lambda_k, lambda_n, lambda_n_minus_k;
  int k;
  double q;
  double rescaled_top;      // N^{2/3} (q^{-1} lambda_2 - 2)
  double rescaled_bottom;   // N^{2/3} (q^{-1} lambda_N + 2)
  double delocalization;    // max sup-norm over eigenvectors (0 if not computed)
  std::uint64_t seed;
};

// edge statistics from a precomputed descending spectrum
EdgeSample make_edge_sample(const std::vector<double>& spectrum, int n, int d,
                            int k, std::uint64_t seed);

}  // namespace regspec
