#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace regspec {

// config/usage problem; maps to exit code 2
struct config_error : std::runtime_error {
  std::vector<std::string> violations;
  explicit config_error(std::vector<std::string> v)
      : std::runtime_error(join(v)), violations(std::move(v)) {}
  static std::string join(const std::vector<std::string>& v) {
    std::string s = "invalid configuration:";
    for (const auto& e : v) s += "\n  - " + e;
    return s;
  }
};

enum class ExperimentKind {
  Rigidity,
  Ramanujan,
  Universality,
  LocalLaw,
  Dbm,
  VerifySwitching,
};

std::string to_string(ExperimentKind k);
ExperimentKind experiment_kind_from_string(const std::string& s);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Rigidity;
  int n = 0;
  int d = 0;
  int trials = 0;
  std::uint64_t seed = 0;

  // kind-specific knobs
  int k = 3;                  // rigidity/universality: which lambda_k
  double delta = 0.1;         // spectral-domain parameter
  double mu = 0.1;            // dbm: t* = N^{-1/3+mu}
  double kappa_const = 1.0;   // dbm: quadrature lower endpoint constant
  double window_hi = 10.0;    // rigidity: upper end of the empty window
  int grid_energy = 6;        // local-law: bulk grid energies
  int grid_eta = 5;           // local-law: etas per energy
  int near_edge_points = 30;  // local-law: near-edge grid size
  int goe_trials = 2000;      // universality: GOE comparator sample count

  bool regime_warning = false;  // set by validate() when d <= N^{2/3}
  bool kind_specified = false;  // whether the parsed JSON carried "kind"

  // Parses and validates, collecting every violation rather than the first.
  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig from_file(const std::string& path);
  nlohmann::json to_json() const;

  void validate();  // throws config_error listing all violations
};

}  // namespace regspec
