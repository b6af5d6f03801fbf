#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "regspec/graph.hpp"
#include "regspec/rng.hpp"

namespace regspec {

// --- GOE -------------------------------------------------------------------
// Normalization: dense model has off-diagonal variance 1/N and diagonal
// variance 2/N, so the spectrum converges to [-2, 2] and the edge centering
// at 2 is exact in the limit.

// all eigenvalues (descending) of the beta=1 tridiagonal model
std::vector<double> goe_tridiagonal_spectrum(int n, Rng& rng);

// all eigenvalues (descending) of a dense GOE draw; oracle for the
// tridiagonal path, O(N^3)
std::vector<double> goe_dense_spectrum(int n, Rng& rng);

struct GoeEdge {
  std::vector<double> top;     // mu_1 >= ... >= mu_k
  std::vector<double> bottom;  // mu_{N-k+1} >= ... >= mu_N
};
GoeEdge goe_edge_sample(int n, int k, Rng& rng);

// constrained GOE of the interpolation: W = Pperp H Pperp with H dense GOE;
// W e = 0 exactly
Eigen::MatrixXd constrained_goe(int n, Rng& rng);

// --- Tracy-Widom GOE CDF ----------------------------------------------------

// Monotone-cubic interpolation of a committed (s, F1(s)) table. Grid spans
// [-10, 8] so both tail clamps are below 1e-8; exact 0/1 outside the grid.
class Tw1Table {
 public:
  explicit Tw1Table(std::vector<std::pair<double, double>> grid);
  static Tw1Table load(const std::string& csv_path);
  static Tw1Table load_default();  // the committed data/tw1_cdf.csv

  double cdf(double s) const;
  double mean() const;    // int s dF from the table
  double median() const;  // F(s) = 1/2

  const std::vector<std::pair<double, double>>& grid() const { return grid_; }

 private:
  std::vector<std::pair<double, double>> grid_;
  std::vector<double> slopes_;  // Fritsch-Carlson tangents
};

// --- DBM interpolation ------------------------------------------------------

struct DbmOptions {
  double mu = 0.1;           // t* = N^{-1/3+mu}, eta = N^{-2/3-mu}
  double kappa_const = 1.0;  // lower quadrature endpoint kappa = c N^{-2/3}
  bool zero_noise = false;   // force W = 0 (scaling cross-check path)
  int quad_points = 64;
};

struct DbmPath {
  std::vector<double> times;
  std::vector<double> xi1;                 // top eigenvalue of A(t)
  std::vector<double> xi2;                 // second eigenvalue of A(t)
  std::vector<std::complex<double>> integral;  // N int Gbar(t; 2+x+i eta) dx
  std::vector<double> x_t;                     // Im of the above (Lemma's X_t)
  std::vector<std::complex<double>> gbar_probe;  // Gbar(t; z_probe) per time
  std::complex<double> probe_z;                  // 2 + N^{-2/3} + i N^{-2/3}
  std::uint64_t graph_seed = 0, goe_seed = 0;
};

// A(t) = e^{-t/2} q^{-1} A + sqrt(1 - e^{-t}) W along the given times
// (increasing, starting at 0, max 1). One W draw per path.
DbmPath dbm_path(const RegularGraph& g, const std::vector<double>& times,
                 const DbmOptions& opts, Rng& rng);

// N int Gbar(z) dx over the edge window, for an externally supplied symmetric
// matrix (exposed for the quadrature cross-checks); X_t is the imaginary part
std::complex<double> dbm_edge_integral(const Eigen::MatrixXd& a_t, double mu,
                                       double kappa_const, int quad_points);

}  // namespace regspec
