// regspec: samplers, spectral diagnostics and Monte-Carlo experiments for
// dense random regular graphs. See README.md for the subcommand overview.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "regspec/config.hpp"
#include "regspec/ensembles.hpp"
#include "regspec/experiments.hpp"
#include "regspec/graph.hpp"
#include "regspec/report.hpp"
#include "regspec/sampler.hpp"
#include "regspec/spectral.hpp"

namespace {

using namespace regspec;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitResource = 4;

void write_text(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  os << content;
  if (!os) throw std::runtime_error("write failed for " + path);
}

// --config wins if present; otherwise flags (applied only when set) override
// the defaults for the given experiment kind
struct ExperimentCli {
  std::string config_path;
  std::string out_dir = ".";
  int n = -1, d = -1, trials = -1, k = -1;
  double delta = -1, mu = -1;
  std::uint64_t seed = 0;
  bool seed_set = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file");
    cmd->add_option("--out-dir", out_dir, "output directory for report files");
    cmd->add_option("--n,--N", n, "number of vertices");
    cmd->add_option("--d", d, "degree");
    cmd->add_option("--trials", trials, "Monte-Carlo trials");
    cmd->add_option("--k", k, "edge eigenvalue index");
    cmd->add_option("--delta", delta, "spectral-domain parameter");
    cmd->add_option("--mu", mu, "time-scale exponent");
    cmd->add_option("--seed", seed, "root seed")->each([this](const std::string&) {
      seed_set = true;
    });
  }

  ExperimentConfig resolve(ExperimentKind kind) const {
    ExperimentConfig cfg;
    if (!config_path.empty()) {
      cfg = ExperimentConfig::from_file(config_path);
      if (!cfg.kind_specified) cfg.kind = kind;
      if (cfg.kind != kind) {
        throw config_error({"config experiment '" + to_string(cfg.kind) +
                            "' does not match subcommand '" + to_string(kind) + "'"});
      }
    } else {
      cfg.kind = kind;
    }
    if (n >= 0) cfg.n = n;
    if (d >= 0) cfg.d = d;
    if (trials >= 0) cfg.trials = trials;
    if (k >= 0) cfg.k = k;
    if (delta >= 0) cfg.delta = delta;
    if (mu >= 0) cfg.mu = mu;
    if (seed_set) cfg.seed = seed;
    cfg.validate();
    return cfg;
  }
};

int run_experiment_command(const ExperimentCli& cli, ExperimentKind kind) {
  ExperimentConfig cfg = cli.resolve(kind);
  if (cfg.regime_warning)
    std::cerr << "warning: d <= N^(2/3); outside the dense regime the "
                 "statistics target\n";
  ExperimentReport rep = run_experiment(cfg);
  EmittedPaths paths = emit_report(rep, cli.out_dir);
  std::cout << paths.report_json << '\n' << paths.trials_csv << '\n';
  if (rep.failed_trials > 0)
    std::cerr << "warning: " << rep.failed_trials << " of " << rep.trials.size()
              << " trials failed; see the error column\n";
  return kExitOk;
}

std::vector<double> parse_times(const std::string& csv) {
  std::vector<double> out;
  std::istringstream ss(csv);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(std::stod(field));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dense random regular graphs: sampling, spectra, experiments"};
  app.require_subcommand(1);

  // --- sample ---
  auto* sample_cmd = app.add_subcommand("sample", "draw approximately uniform d-regular graphs");
  int s_n = 0, s_d = 0, s_count = 1;
  std::uint64_t s_seed = 0;
  std::int64_t s_burn = 0;
  std::string s_out;
  sample_cmd->add_option("--n,--N", s_n, "vertices")->required();
  sample_cmd->add_option("--d", s_d, "degree")->required();
  sample_cmd->add_option("--seed", s_seed, "RNG seed");
  sample_cmd->add_option("--burn-in", s_burn, "lazy chain steps before the first sample (0: default)");
  sample_cmd->add_option("--count", s_count, "number of samples");
  sample_cmd->add_option("--out", s_out, "output file (concatenated stream); stdout if omitted");

  // --- spectrum ---
  auto* spec_cmd = app.add_subcommand("spectrum", "eigenvalues of a graph adjacency matrix");
  std::string sp_in, sp_out;
  int sp_extreme = 0;
  bool sp_full = false;
  spec_cmd->add_option("--in", sp_in, "graph file")->required();
  spec_cmd->add_flag("--full", sp_full, "full spectrum (dense solver)");
  spec_cmd->add_option("--extreme", sp_extreme, "k extreme nontrivial eigenvalues per edge");
  spec_cmd->add_option("--out", sp_out, "output CSV; stdout if omitted");

  // --- green ---
  auto* green_cmd = app.add_subcommand("green", "Green function diagnostics at one spectral point");
  std::string gr_in, gr_out;
  double gr_e = 0.0, gr_eta = 0.0;
  bool gr_entries = false;
  green_cmd->add_option("--in", gr_in, "graph file")->required();
  green_cmd->add_option("--E", gr_e, "energy")->required();
  green_cmd->add_option("--eta", gr_eta, "imaginary part, > 0")->required();
  green_cmd->add_flag("--entries", gr_entries, "dump all entries (small N only)");
  green_cmd->add_option("--out", gr_out, "output CSV; stdout if omitted");

  // --- goe ---
  auto* goe_cmd = app.add_subcommand("goe", "GOE edge samples (tridiagonal model)");
  int goe_n = 0, goe_trials = 1;
  std::uint64_t goe_seed = 0;
  std::string goe_out;
  goe_cmd->add_option("--n,--N", goe_n, "matrix size")->required();
  goe_cmd->add_option("--trials", goe_trials, "number of draws");
  goe_cmd->add_option("--seed", goe_seed, "root seed");
  goe_cmd->add_option("--out", goe_out, "output CSV; stdout if omitted");

  // --- dbm (path mode with --in, experiment mode with --config/flags) ---
  auto* dbm_cmd = app.add_subcommand("dbm", "interpolation paths toward the constrained GOE");
  std::string dbm_in, dbm_times = "0", dbm_out;
  ExperimentCli dbm_exp;
  dbm_cmd->add_option("--in", dbm_in, "graph file (single-path mode)");
  dbm_cmd->add_option("--times", dbm_times, "comma-separated times, increasing from 0");
  dbm_cmd->add_option("--out", dbm_out, "output CSV (single-path mode); stdout if omitted");
  dbm_exp.attach(dbm_cmd);  // --mu and --seed are shared with single-path mode

  // --- experiments ---
  ExperimentCli rig_cli, ram_cli, uni_cli, law_cli, ver_cli;
  auto* rig_cmd = app.add_subcommand("rigidity", "edge rigidity Monte-Carlo");
  rig_cli.attach(rig_cmd);
  auto* ram_cmd = app.add_subcommand("ramanujan", "Ramanujan-fraction Monte-Carlo");
  ram_cli.attach(ram_cmd);
  auto* uni_cmd = app.add_subcommand("universality", "edge fluctuation vs GOE comparison");
  uni_cli.attach(uni_cmd);
  auto* law_cmd = app.add_subcommand("local-law", "Green function local-law ratios");
  law_cli.attach(law_cmd);
  auto* ver_cmd = app.add_subcommand("verify-switching", "exact switching identities by enumeration");
  ver_cli.attach(ver_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (sample_cmd->parsed()) {
      SamplerConfig sc;
      sc.n_vertices = s_n;
      sc.degree = s_d;
      sc.rng_seed = s_seed;
      sc.burn_in_steps = s_burn;
      UniformSampler sampler(sc);
      std::ostringstream os;
      for (int c = 0; c < s_count; ++c) write_graph(os, sampler.next());
      if (s_out.empty())
        std::cout << os.str();
      else
        write_text(s_out, os.str());
      return kExitOk;
    }

    if (spec_cmd->parsed()) {
      if (sp_full == (sp_extreme > 0))
        throw config_error({"spectrum: exactly one of --full or --extreme k required"});
      RegularGraph g = read_graph_file(sp_in);
      std::ostringstream os;
      os << "index,eigenvalue\n";
      if (sp_full) {
        auto spec = full_spectrum(g);
        for (std::size_t i = 0; i < spec.size(); ++i)
          os << (i + 1) << ',' << format_double(spec[i]) << '\n';
      } else {
        auto ee = extreme_eigs(g, sp_extreme);
        for (std::size_t i = 0; i < ee.top.size(); ++i)
          os << (i + 2) << ',' << format_double(ee.top[i]) << '\n';
        for (std::size_t i = 0; i < ee.bottom.size(); ++i)
          os << (g.n() - ee.bottom.size() + i + 1) << ','
             << format_double(ee.bottom[i]) << '\n';
      }
      if (sp_out.empty())
        std::cout << os.str();
      else
        write_text(sp_out, os.str());
      return kExitOk;
    }

    if (green_cmd->parsed()) {
      RegularGraph g = read_graph_file(gr_in);
      GreenEvaluator ge(g);
      SpectralPoint p(gr_e, gr_eta);
      std::ostringstream os;
      if (gr_entries) {
        auto m = ge.matrix(p.z());
        os << "row,col,re,im\n";
        for (int r = 0; r < g.n(); ++r)
          for (int c = 0; c < g.n(); ++c)
            os << r << ',' << c << ',' << format_double(m(r, c).real()) << ','
               << format_double(m(r, c).imag()) << '\n';
      } else {
        Complex gb = ge.gbar(p.z());
        Complex m = semicircle_m(p.z());
        os << "quantity,re,im\n";
        os << "gbar," << format_double(gb.real()) << ',' << format_double(gb.imag()) << '\n';
        os << "semicircle_m," << format_double(m.real()) << ',' << format_double(m.imag()) << '\n';
        os << "ward_residual_col0," << format_double(ward_residual(ge, p, 0)) << ",0\n";
        os << "self_consistent_avg," << format_double(self_consistent_residual_avg(ge, p)) << ",0\n";
      }
      if (gr_out.empty())
        std::cout << os.str();
      else
        write_text(gr_out, os.str());
      return kExitOk;
    }

    if (goe_cmd->parsed()) {
      std::ostringstream os;
      os << "trial,mu_1,mu_2,mu_N\n";
      for (int t = 0; t < goe_trials; ++t) {
        Rng rng(derive_seed(goe_seed, t, "goe"));
        auto edge = goe_edge_sample(goe_n, 2, rng);
        os << t << ',' << format_double(edge.top[0]) << ','
           << format_double(edge.top[1]) << ',' << format_double(edge.bottom.back())
           << '\n';
      }
      if (goe_out.empty())
        std::cout << os.str();
      else
        write_text(goe_out, os.str());
      return kExitOk;
    }

    if (dbm_cmd->parsed()) {
      if (dbm_in.empty())  // experiment mode
        return run_experiment_command(dbm_exp, ExperimentKind::Dbm);
      RegularGraph g = read_graph_file(dbm_in);
      DbmOptions opts;
      if (dbm_exp.mu >= 0) opts.mu = dbm_exp.mu;
      Rng rng(dbm_exp.seed);
      DbmPath path = dbm_path(g, parse_times(dbm_times), opts, rng);
      std::ostringstream os;
      os << "t,xi2,x_t_re,x_t_im\n";
      for (std::size_t i = 0; i < path.times.size(); ++i)
        os << format_double(path.times[i]) << ',' << format_double(path.xi2[i])
           << ',' << format_double(path.integral[i].real()) << ','
           << format_double(path.integral[i].imag()) << '\n';
      if (dbm_out.empty())
        std::cout << os.str();
      else
        write_text(dbm_out, os.str());
      return kExitOk;
    }

    if (rig_cmd->parsed()) return run_experiment_command(rig_cli, ExperimentKind::Rigidity);
    if (ram_cmd->parsed()) return run_experiment_command(ram_cli, ExperimentKind::Ramanujan);
    if (uni_cmd->parsed()) return run_experiment_command(uni_cli, ExperimentKind::Universality);
    if (law_cmd->parsed()) return run_experiment_command(law_cli, ExperimentKind::LocalLaw);
    if (ver_cmd->parsed()) return run_experiment_command(ver_cli, ExperimentKind::VerifySwitching);

    std::cerr << "no subcommand\n";
    return kExitConfig;
  } catch (const config_error& e) {
    std::cerr << e.what() << '\n';
    return kExitConfig;
  } catch (const resource_guard_exceeded& e) {
    std::cerr << "resource guard: " << e.what() << '\n';
    return kExitResource;
  } catch (const numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return kExitNumerical;
  }
}
