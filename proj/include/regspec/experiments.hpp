#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "regspec/config.hpp"
#include "regspec/graph.hpp"
#include "regspec/report.hpp"
#include "regspec/rng.hpp"

namespace regspec {

// worker pool size: min(REGSPEC_THREADS, hardware_concurrency), at least 1
int worker_count();

// runs fn(trial) for trial in [0, trials) on the worker pool; results are
// collected by the caller in trial-index order (fn writes into per-index slots)
void parallel_for_trials(int trials, const std::function<void(int)>& fn);

ExperimentReport run_rigidity(const ExperimentConfig& cfg);
ExperimentReport run_ramanujan(const ExperimentConfig& cfg);
ExperimentReport run_universality(const ExperimentConfig& cfg);
ExperimentReport run_local_law(const ExperimentConfig& cfg);
ExperimentReport run_dbm(const ExperimentConfig& cfg);
ExperimentReport run_verify_switching(const ExperimentConfig& cfg);
ExperimentReport run_experiment(const ExperimentConfig& cfg);

// --- exact enumeration verifier ---------------------------------------------
// Everything below works on raw integer symmetric matrices so that perturbed
// matrices with entries outside {0,1} remain representable.

using IntMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

IntMatrix adjacency_int(const RegularGraph& g);

// adds sign * xi_ij^kl by the raw symmetric formula; indices need not be
// distinct (delta_aa contributes 2 on the diagonal)
void add_raw_xi(IntMatrix& a, int i, int j, int k, int l, int sign = 1);

// random polynomial functional in entries of A, A^2 and the traces tr A^2,
// tr A^3; integer coefficients, exactly evaluable in 64-bit on tiny N
class PolyFunctional {
 public:
  static PolyFunctional random(int n, Rng& rng, int terms = 4);
  long long eval(const IntMatrix& a) const;
  // same functional on a real matrix (used for interpolation along A + t xi)
  double eval_real(const Eigen::MatrixXd& a) const;
  int degree() const { return degree_; }

 private:
  struct Atom {
    int kind;  // 0: A_xy, 1: (A^2)_xy, 2: tr A^2, 3: tr A^3
    int x = 0, y = 0;
  };
  struct Term {
    long long coeff;
    std::vector<Atom> atoms;
  };
  std::vector<Term> terms_;
  int degree_ = 0;
};

struct SwitchingVerification {
  int n = 0, d = 0;
  std::size_t graph_count = 0;
  int functionals = 0;

  long long lemma21_max_abs_diff = 0;     // exact integer difference
  long long chain26_max_abs_diff = 0;     // identity chain behind (2.6)
  long long chain28_max_abs_diff = 0;     // identity chain behind (2.8)
  double lemma22_max_c_feasible = 0.0;    // remainder constant, feasible-moves M
  double lemma22_max_c_all = 0.0;         // remainder constant, all-moves M
  long long power_sum_max_abs_diff = 0;   // sum_j (A^r)_ij - d^r, r <= 8
  double power_diag_min = 0.0;            // min of (A^{2r})_ii - d^{2r}/N
  long long product_rule_max_abs_diff = 0;
  double taylor_max_rel_err = 0.0;        // finite-difference Taylor cross-check
};

SwitchingVerification verify_switching_exact(int n, int d, int n_functionals,
                                             std::uint64_t seed);

}  // namespace regspec
