#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "regspec/config.hpp"

namespace regspec {

// round-trip-safe decimal formatting (shortest representation); all
// floating-point output in CSV/JSON goes through this
std::string format_double(double v);

struct TrialRecord {
  std::uint64_t trial = 0;
  bool ok = true;
  std::string error;                // empty when ok
  std::vector<double> values;       // aligned with ExperimentReport::columns
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<std::string> columns;  // CSV schema after (trial, ok, error)
  std::vector<TrialRecord> trials;
  nlohmann::json summary;            // quantiles, KS, ratios, bound formulas
  int failed_trials = 0;

  // summary statistics recomputable from the persisted per-trial records
  std::vector<double> column_values(const std::string& column,
                                    bool ok_only = true) const;
  std::string trials_csv() const;
};

struct EmittedPaths {
  std::string report_json, trials_csv, manifest_json;
};

// Writes report.json, trials.csv and manifest.json under out_dir; re-emitting
// the same report is byte-identical. The manifest records an FNV-1a-64 digest
// of trials.csv.
EmittedPaths emit_report(const ExperimentReport& report, const std::string& out_dir);

// FNV-1a 64-bit digest of a file's bytes, hex-encoded
std::string file_digest_fnv1a64(const std::string& path);

// reconstructs per-trial records from an emitted pair (round-trip check)
ExperimentReport parse_report(const std::string& report_json_path,
                              const std::string& trials_csv_path);

}  // namespace regspec
