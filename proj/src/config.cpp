#include "regspec/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace regspec {

std::string to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::Rigidity: return "rigidity";
    case ExperimentKind::Ramanujan: return "ramanujan";
    case ExperimentKind::Universality: return "universality";
    case ExperimentKind::LocalLaw: return "local-law";
    case ExperimentKind::Dbm: return "dbm";
    case ExperimentKind::VerifySwitching: return "verify-switching";
  }
  return "?";
}

ExperimentKind experiment_kind_from_string(const std::string& s) {
  if (s == "rigidity") return ExperimentKind::Rigidity;
  if (s == "ramanujan") return ExperimentKind::Ramanujan;
  if (s == "universality") return ExperimentKind::Universality;
  if (s == "local-law") return ExperimentKind::LocalLaw;
  if (s == "dbm") return ExperimentKind::Dbm;
  if (s == "verify-switching") return ExperimentKind::VerifySwitching;
  throw config_error({"unknown experiment kind '" + s +
                      "' (expected one of rigidity, ramanujan, universality, "
                      "local-law, dbm, verify-switching)"});
}

namespace {
const std::set<std::string> kKnownKeys = {
    "kind", "n", "N", "d", "trials", "seed", "k", "delta", "mu", "kappa_const",
    "window_hi", "grid_energy", "grid_eta", "near_edge_points", "goe_trials"};
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  std::vector<std::string> errs;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!kKnownKeys.count(it.key())) {
      std::string accepted;
      for (const auto& k : kKnownKeys) accepted += (accepted.empty() ? "" : ", ") + k;
      errs.push_back("unknown key '" + it.key() + "' (accepted keys: " + accepted + ")");
    }
  }
  ExperimentConfig c;
  auto get = [&](const char* key, auto& field, bool required) {
    if (!j.contains(key)) {
      if (required) errs.push_back(std::string(key) + ": required field missing");
      return;
    }
    try {
      field = j.at(key).get<std::decay_t<decltype(field)>>();
    } catch (const nlohmann::json::exception&) {
      errs.push_back(std::string(key) + ": wrong type");
    }
  };
  // optional: the CLI subcommand supplies the kind when the file omits it
  std::string kind_str;
  get("kind", kind_str, false);
  if (j.contains("N") && !j.contains("n")) {
    get("N", c.n, true);
  } else {
    get("n", c.n, true);
  }
  get("d", c.d, true);
  get("trials", c.trials, false);
  get("seed", c.seed, false);
  get("k", c.k, false);
  get("delta", c.delta, false);
  get("mu", c.mu, false);
  get("kappa_const", c.kappa_const, false);
  get("window_hi", c.window_hi, false);
  get("grid_energy", c.grid_energy, false);
  get("grid_eta", c.grid_eta, false);
  get("near_edge_points", c.near_edge_points, false);
  get("goe_trials", c.goe_trials, false);
  if (!errs.empty()) throw config_error(std::move(errs));
  if (!kind_str.empty()) {
    c.kind = experiment_kind_from_string(kind_str);
    c.kind_specified = true;
  }
  c.validate();
  return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw config_error({"cannot open config file " + path});
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw config_error({std::string("JSON parse error: ") + e.what()});
  }
  return from_json(j);
}

nlohmann::json ExperimentConfig::to_json() const {
  return {{"kind", to_string(kind)},
          {"n", n},
          {"d", d},
          {"trials", trials},
          {"seed", seed},
          {"k", k},
          {"delta", delta},
          {"mu", mu},
          {"kappa_const", kappa_const},
          {"window_hi", window_hi},
          {"grid_energy", grid_energy},
          {"grid_eta", grid_eta},
          {"near_edge_points", near_edge_points},
          {"goe_trials", goe_trials}};
}

void ExperimentConfig::validate() {
  std::vector<std::string> errs;
  if (n < 2) errs.push_back("n: need n >= 2");
  if (d < 0 || d > n - 1) errs.push_back("d: need 0 <= d <= n-1");
  if (n >= 2 && (static_cast<long long>(n) * d) % 2 != 0)
    errs.push_back("d: n*d must be even");
  if (trials < 0) errs.push_back("trials: must be nonnegative");
  if (k < 2 || k >= n) errs.push_back("k: need 2 <= k < n");
  if (!(delta > 0.0 && delta < 1.0)) errs.push_back("delta: need delta in (0,1)");
  if (!(mu > 0.0 && mu < 1.0 / 3.0)) errs.push_back("mu: need mu in (0, 1/3)");
  if (!(kappa_const > 0.0)) errs.push_back("kappa_const: must be positive");
  if (grid_energy < 1 || grid_eta < 1 || near_edge_points < 1)
    errs.push_back("grid: grid sizes must be >= 1");
  if (goe_trials < 1) errs.push_back("goe_trials: must be >= 1");

  const bool regime_kind = kind == ExperimentKind::Rigidity ||
                           kind == ExperimentKind::Ramanujan ||
                           kind == ExperimentKind::Universality;
  if (regime_kind) {
    if (d > n / 2)
      errs.push_back("d: regime constraint d <= N/2 violated (hard error)");
    else if (d < 3)
      errs.push_back("d: regime constraint d >= 3 violated (hard error)");
    else if (std::pow(static_cast<double>(n), 2.0 / 3.0) >= d)
      regime_warning = true;  // outside N^{2/3} << d, run proceeds with warning
  }
  if (!errs.empty()) throw config_error(std::move(errs));
}

}  // namespace regspec
