#include "regspec/report.hpp"

#include "regspec/rng.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace regspec {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::vector<double> ExperimentReport::column_values(const std::string& column,
                                                    bool ok_only) const {
  auto it = std::find(columns.begin(), columns.end(), column);
  if (it == columns.end())
    throw std::invalid_argument("column_values: no column " + column);
  const std::size_t idx = it - columns.begin();
  std::vector<double> out;
  for (const auto& t : trials) {
    if (ok_only && !t.ok) continue;
    out.push_back(t.values.at(idx));
  }
  return out;
}

std::string ExperimentReport::trials_csv() const {
  std::ostringstream os;
  os << "trial,ok,error";
  for (const auto& c : columns) os << ',' << c;
  os << '\n';
  for (const auto& t : trials) {
    os << t.trial << ',' << (t.ok ? 1 : 0) << ',' << t.error;
    for (double v : t.values) os << ',' << format_double(v);
    os << '\n';
  }
  return os.str();
}

namespace {

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  for (int i = 15; i >= 0; --i) {
    buf[i] = "0123456789abcdef"[v & 0xf];
    v >>= 4;
  }
  buf[16] = '\0';
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("emit_report: cannot open " + path);
  os << content;
  if (!os) throw std::runtime_error("emit_report: write failed for " + path);
}

}  // namespace

std::string file_digest_fnv1a64(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("file_digest: cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return hex64(fnv1a64(ss.str()));
}

EmittedPaths emit_report(const ExperimentReport& report, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  EmittedPaths paths;
  paths.report_json = out_dir + "/report.json";
  paths.trials_csv = out_dir + "/trials.csv";
  paths.manifest_json = out_dir + "/manifest.json";

  const std::string csv = report.trials_csv();
  write_file(paths.trials_csv, csv);

  nlohmann::json rj;
  rj["config"] = report.config.to_json();
  rj["columns"] = report.columns;
  rj["trial_count"] = report.trials.size();
  rj["failed_trials"] = report.failed_trials;
  rj["summary"] = report.summary;
  rj["trials_csv_digest"] = hex64(fnv1a64(csv));
  write_file(paths.report_json, rj.dump(2) + "\n");

  nlohmann::json mj;
  mj["artifact_version"] = "regspec-1.0";
  mj["seed_scheme"] = std::string(kSeedSchemeId);
  mj["root_seed"] = report.config.seed;
  mj["config"] = report.config.to_json();
  mj["digests"] = {{"trials.csv", hex64(fnv1a64(csv))},
                   {"algorithm", "fnv1a64"}};
  write_file(paths.manifest_json, mj.dump(2) + "\n");
  return paths;
}

ExperimentReport parse_report(const std::string& report_json_path,
                              const std::string& trials_csv_path) {
  std::ifstream rj(report_json_path);
  if (!rj) throw std::runtime_error("parse_report: cannot open " + report_json_path);
  nlohmann::json j;
  rj >> j;

  ExperimentReport rep;
  rep.config = ExperimentConfig::from_json(j.at("config"));
  rep.columns = j.at("columns").get<std::vector<std::string>>();
  rep.summary = j.at("summary");
  rep.failed_trials = j.at("failed_trials").get<int>();

  std::ifstream cs(trials_csv_path);
  if (!cs) throw std::runtime_error("parse_report: cannot open " + trials_csv_path);
  std::string line;
  std::getline(cs, line);  // header
  while (std::getline(cs, line)) {
    if (line.empty()) continue;
    TrialRecord t;
    std::istringstream ls(line);
    std::string field;
    std::getline(ls, field, ',');
    t.trial = std::stoull(field);
    std::getline(ls, field, ',');
    t.ok = field == "1";
    std::getline(ls, field, ',');
    t.error = field;
    while (std::getline(ls, field, ',')) t.values.push_back(std::stod(field));
    rep.trials.push_back(std::move(t));
  }
  return rep;
}

}  // namespace regspec
