#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <optional>
#include <string>
#include <vector>

#include "spcausal/chain_io.hpp"
#include "spcausal/diagnostics.hpp"
#include "spcausal/errors.hpp"
#include "spcausal/experiment.hpp"
#include "spcausal/model.hpp"
#include "spcausal/priors.hpp"
#include "spcausal/rng.hpp"
#include "spcausal/sampler.hpp"
#include "spcausal/scenario_dag.hpp"

using namespace spcausal;

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

// Flat key=value settings file. Keys are long option names without the
// leading dashes; # starts a comment. Options given explicitly on the
// command line win over the file.
std::vector<std::string> load_config_tokens(const std::string& path,
                                            const std::vector<std::string>& given) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file: " + path);
  std::vector<std::string> tokens;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    const auto eq = text.find('=');
    const std::string where = path + ":" + std::to_string(lineno);
    if (eq == std::string::npos) throw ParseError(where + ": expected key=value");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty()) throw ParseError(where + ": empty key");
    if (key == "config") throw ParseError(where + ": config files cannot nest");
    if (std::find(given.begin(), given.end(), "--" + key) != given.end()) continue;
    tokens.push_back("--" + key + "=" + value);
  }
  return tokens;
}

// Splices each --config FILE into the argument list as --key=value tokens
// before the parser sees them, so settings files work uniformly across
// subcommands.
std::vector<std::string> expand_args(int argc, char** argv) {
  std::vector<std::string> given;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a.rfind("--", 0) == 0) {
      const auto eq = a.find('=');
      given.push_back(eq == std::string::npos ? a : a.substr(0, eq));
    }
  }
  std::vector<std::string> out;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    std::string file;
    if (a == "--config") {
      if (i + 1 >= argc) throw ParseError("--config needs a file path");
      file = argv[++i];
    } else if (a.rfind("--config=", 0) == 0) {
      file = a.substr(9);
    } else {
      out.push_back(a);
      continue;
    }
    const auto tokens = load_config_tokens(file, given);
    out.insert(out.end(), tokens.begin(), tokens.end());
  }
  return out;
}

struct IndependenceQuery {
  Node x;
  Node y;
  std::vector<Node> cond;
};

// Queries look like "Z1 _||_ Y1 | U1,U2"; the conditioning part is optional.
IndependenceQuery parse_query(const std::string& text) {
  const auto sep = text.find("_||_");
  if (sep == std::string::npos)
    throw ParseError("query must look like \"Z1 _||_ Y1 | U1,U2\"");
  const std::string left = trim(text.substr(0, sep));
  std::string right = text.substr(sep + 4);
  std::string cond_part;
  const auto bar = right.find('|');
  if (bar != std::string::npos) {
    cond_part = right.substr(bar + 1);
    right = right.substr(0, bar);
  }
  right = trim(right);
  if (left.empty() || right.empty())
    throw ParseError("query must name two variables around _||_");
  IndependenceQuery q{parse_node(left), parse_node(right), {}};
  std::stringstream items(cond_part);
  std::string item;
  while (std::getline(items, item, ',')) {
    item = trim(item);
    if (!item.empty()) q.cond.push_back(parse_node(item));
  }
  return q;
}

std::string cell(double v) {
  if (std::isnan(v)) return "--";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

void print_table(const ResultTable& table) {
  std::printf("%-14s %-6s %-20s %5s  %8s %8s %7s  %8s %8s %7s\n", "scenario", "method",
              "model", "conv", "bias", "rmse", "cov%", "bias(I)", "rmse(I)", "cov%(I)");
  for (const auto& r : table.rows)
    std::printf("%-14s %-6s %-20s %3d/%-3d  %8s %8s %7s  %8s %8s %7s\n",
                r.scenario.c_str(), r.method.c_str(), r.model.c_str(), r.n_converged,
                r.n_replications, cell(r.bias_local).c_str(), cell(r.rmse_local).c_str(),
                cell(r.coverage_local).c_str(), cell(r.bias_interference).c_str(),
                cell(r.rmse_interference).c_str(), cell(r.coverage_interference).c_str());
}

void print_report(const AnalysisReport& report) {
  if (!report.dropped_units.empty())
    std::printf("dropped %zu of %d units with no neighbor\n", report.dropped_units.size(),
                report.n_total);
  for (const auto& row : report.rows) {
    std::printf("%-36s local %7.3f (%7.3f, %7.3f)", row.method.c_str(), row.local,
                row.local_lower, row.local_upper);
    if (row.has_interference)
      std::printf("   interference %7.3f (%7.3f, %7.3f)", row.interference,
                  row.interference_lower, row.interference_upper);
    if (row.bayesian && std::isfinite(row.rhat_local)) {
      std::printf("   R-hat %.3f/%.3f", row.rhat_local, row.rhat_interference);
      if (!row.converged) std::printf("  NOT CONVERGED");
    }
    std::printf("\n");
  }
}

void add_sampler_flags(CLI::App* cmd, int& iters, int& burnin, int& thin, int& chains,
                       double& gate, std::uint64_t& seed) {
  cmd->add_option("--iters", iters, "Sweeps per chain");
  cmd->add_option("--burnin", burnin, "Sweeps discarded as burn-in");
  cmd->add_option("--thin", thin, "Keep every thin-th post-burn-in state");
  cmd->add_option("--chains", chains, "Independent chains per fit");
  cmd->add_option("--rhat-gate", gate, "Convergence threshold on split R-hat");
  cmd->add_option("--seed", seed, "Base RNG seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Spatial causal inference toolkit: simulation studies of interference and\n"
      "unmeasured spatial confounding, graphical identifiability checks, and a\n"
      "Bayesian latent-confounder model for network data."};
  app.require_subcommand(1);
  std::function<int()> action;

  // ---- simulate ----
  auto* sim = app.add_subcommand("simulate", "Run a simulation study from explicit settings");
  std::string sim_study = "main";
  sim->add_option("--study", sim_study,
                  "main = OLS vs Bayes comparison; motivating-* = OLS bias grids")
      ->check(CLI::IsMember({"main", "motivating-pairs", "motivating-network"}));
  ExperimentSpec sim_spec;
  sim_spec.methods = {"ols", "bayes"};
  auto* sim_design =
      sim->add_option("--design", sim_spec.design, "Sampling design")
          ->check(CLI::IsMember({"network-line", "paired-gaussian", "paired-binary"}));
  sim->add_option("--scenario", sim_spec.scenario_id, "Confounding scenario 2a..2f or full");
  sim->add_option("--n", sim_spec.n_units, "Total units (paired designs need an even count)");
  sim->add_option("--reps", sim_spec.n_replications, "Replications");
  sim->add_option("--methods", sim_spec.methods, "Comma list from {ols, bayes}")
      ->delimiter(',');
  sim->add_option("--threads", sim_spec.threads, "Worker threads (0 = pick)");
  add_sampler_flags(sim, sim_spec.n_iter, sim_spec.n_burnin, sim_spec.thin,
                    sim_spec.n_chains, sim_spec.rhat_gate, sim_spec.seed);
  int sim_p = 4;
  sim->add_option("--p", sim_p, "Measured covariate count (0 or 4)");
  double ov_phiU = 0, ov_phiZ = 0, ov_rho = 0, ov_tauU2 = 0, ov_tauZ2 = 0;
  double ov_betaZ = 0, ov_betaZbar = 0, ov_betaU = 0, ov_betaUbar = 0, ov_betaUZ = 0;
  double ov_sigmaY2 = 0;
  auto* o_phiU = sim->add_option("--phi-u", ov_phiU, "Spatial dependence of U");
  auto* o_phiZ = sim->add_option("--phi-z", ov_phiZ, "Spatial dependence of Z");
  auto* o_rho = sim->add_option("--rho", ov_rho, "Cross-correlation of U and Z");
  auto* o_tauU2 = sim->add_option("--tau-u2", ov_tauU2, "Precision scale of U");
  auto* o_tauZ2 = sim->add_option("--tau-z2", ov_tauZ2, "Precision scale of Z");
  auto* o_betaZ = sim->add_option("--beta-z", ov_betaZ, "Local exposure effect");
  auto* o_betaZbar = sim->add_option("--beta-zbar", ov_betaZbar, "Interference effect");
  auto* o_betaU = sim->add_option("--beta-u", ov_betaU, "Local confounder effect");
  auto* o_betaUbar = sim->add_option("--beta-ubar", ov_betaUbar, "Neighbor confounder effect");
  auto* o_betaUZ = sim->add_option("--beta-uz", ov_betaUZ, "Confounder-on-exposure slope");
  auto* o_sigmaY2 = sim->add_option("--sigma-y2", ov_sigmaY2, "Outcome noise variance");
  std::string sim_out = "results.csv", sim_format = "csv";
  sim->add_option("--out", sim_out, "Result table path");
  sim->add_option("--format", sim_format)->check(CLI::IsMember({"csv", "markdown"}));
  sim->callback([&] {
    action = [&]() -> int {
      if (!*sim_design) {
        if (sim_study == "motivating-pairs") sim_spec.design = "paired-binary";
        if (sim_study == "motivating-network") sim_spec.design = "network-line";
      }
      ScenarioConfig cfg =
          sim_spec.design == "paired-binary"
              ? motivating_pairs_config(sim_spec.scenario_id)
              : gaussian_config(sim_spec.scenario_id,
                                sim_spec.design == "paired-gaussian", sim_p);
      if (*o_phiU) cfg.phiU = ov_phiU;
      if (*o_phiZ) cfg.phiZ = ov_phiZ;
      if (*o_rho) cfg.rho = ov_rho;
      if (*o_tauU2) cfg.tauU2 = ov_tauU2;
      if (*o_tauZ2) cfg.tauZ2 = ov_tauZ2;
      if (*o_betaZ) cfg.betaZ = ov_betaZ;
      if (*o_betaZbar) cfg.betaZbar = ov_betaZbar;
      if (*o_betaU) cfg.betaU = ov_betaU;
      if (*o_betaUbar) cfg.betaUbar = ov_betaUbar;
      if (*o_betaUZ) cfg.betaUZ = ov_betaUZ;
      if (*o_sigmaY2) cfg.sigmaY2 = ov_sigmaY2;
      sim_spec.config = ScenarioConfig::checked(cfg);
      ResultTable table;
      if (sim_study == "motivating-pairs")
        table = run_motivating_pairs(sim_spec);
      else if (sim_study == "motivating-network")
        table = run_motivating_network(sim_spec);
      else
        table = run_main_simulation(sim_spec);
      write_table(table, sim_out, sim_format);
      print_table(table);
      std::printf("wrote %zu rows to %s\n", table.rows.size(), sim_out.c_str());
      return 0;
    };
  });

  // ---- reproduce ----
  auto* rep = app.add_subcommand("reproduce", "Re-run one of the reported study tables");
  std::string rep_table;
  rep->add_option("--table", rep_table, "Which table: 1, 2, S1, or S2")
      ->required()
      ->check(CLI::IsMember({"1", "2", "S1", "S2"}));
  bool rep_full = false;
  rep->add_flag("--full", rep_full, "Full replication counts instead of desk scale");
  std::string rep_scenario;
  auto* o_rep_scenario =
      rep->add_option("--scenario", rep_scenario, "Override the scenario (tables 2, S2)");
  int rep_n = 0, rep_reps = 0, rep_threads = 0;
  auto* o_rep_n = rep->add_option("--n", rep_n, "Override the unit count");
  auto* o_rep_reps = rep->add_option("--reps", rep_reps, "Override the replication count");
  rep->add_option("--threads", rep_threads, "Worker threads (0 = pick)");
  std::uint64_t rep_seed = 1;
  rep->add_option("--seed", rep_seed, "Base RNG seed");
  std::string rep_out, rep_format = "csv";
  rep->add_option("--out", rep_out, "Result table path (default table<id>.csv)");
  rep->add_option("--format", rep_format)->check(CLI::IsMember({"csv", "markdown"}));
  rep->callback([&] {
    action = [&]() -> int {
      ExperimentSpec spec;
      spec.seed = rep_seed;
      spec.threads = rep_threads;
      ResultTable table;
      if (rep_table == "1") {
        spec.design = "paired-binary";
        spec.n_units = *o_rep_n ? rep_n : 400;
        spec.n_replications = *o_rep_reps ? rep_reps : 300;
        table = run_motivating_pairs(spec);
      } else if (rep_table == "S1") {
        spec.design = "network-line";
        spec.n_units = *o_rep_n ? rep_n : 100;
        spec.n_replications = *o_rep_reps ? rep_reps : 200;
        table = run_motivating_network(spec);
      } else {
        const bool paired = rep_table == "S2";
        spec.design = paired ? "paired-gaussian" : "network-line";
        spec.scenario_id =
            *o_rep_scenario ? rep_scenario : (paired ? std::string("2c") : std::string("2a"));
        spec.n_units = *o_rep_n ? rep_n : 200;
        spec.n_replications = *o_rep_reps ? rep_reps : (rep_full ? 500 : 100);
        spec.methods = {"ols", "bayes"};
        spec.config = gaussian_config(spec.scenario_id, paired, 4);
        table = run_main_simulation(spec);
      }
      const std::string out = rep_out.empty() ? "table" + rep_table + ".csv" : rep_out;
      write_table(table, out, rep_format);
      print_table(table);
      std::printf("wrote %zu rows to %s\n", table.rows.size(), out.c_str());
      return 0;
    };
  });

  // ---- analyze ----
  auto* ana = app.add_subcommand("analyze", "Analyze a CSV dataset on a spatial graph");
  std::string ana_data, ana_edges;
  ana->add_option("--data", ana_data, "CSV with columns y, z, and covariates")
      ->required()
      ->check(CLI::ExistingFile);
  ana->add_option("--edges", ana_edges, "Edge list, one 1-based \"i j\" pair per line")
      ->required()
      ->check(CLI::ExistingFile);
  AnalyzeOptions ana_opt;
  ana->add_flag("--log-exposure", ana_opt.log_exposure,
                "Log-transform the exposure before neighbor averaging");
  int ana_gh = 0;
  auto* o_ana_gh =
      ana->add_option("--gh-adjacency", ana_gh,
                      "Fit the spatial model on this adjacency degree only (1 or 2)")
          ->check(CLI::IsMember({1, 2}));
  ana->add_option("--exposure-adjacency", ana_opt.exposure_degree,
                  "Adjacency degree defining the neighborhood exposure")
      ->check(CLI::IsMember({1, 2}));
  ana->add_option("--columns", ana_opt.covariate_columns,
                  "Comma list of covariate columns (default: every extra column)")
      ->delimiter(',');
  bool ana_no_bayes = false;
  ana->add_flag("--no-bayes", ana_no_bayes, "Skip the spatial model fits");
  int ana_iters = default_n_iter, ana_burnin = default_n_burnin, ana_thin = default_thin;
  int ana_chains = 2;
  double ana_gate = 1.02;
  std::uint64_t ana_seed = 1;
  add_sampler_flags(ana, ana_iters, ana_burnin, ana_thin, ana_chains, ana_gate, ana_seed);
  std::string ana_out = "analysis.csv", ana_format = "csv";
  ana->add_option("--out", ana_out, "Report path");
  ana->add_option("--format", ana_format)->check(CLI::IsMember({"csv", "markdown"}));
  ana->callback([&] {
    action = [&]() -> int {
      if (*o_ana_gh) ana_opt.gh_degree = ana_gh;
      ana_opt.run_bayes = !ana_no_bayes;
      ana_opt.n_iter = ana_iters;
      ana_opt.n_burnin = ana_burnin;
      ana_opt.thin = ana_thin;
      ana_opt.n_chains = ana_chains;
      ana_opt.rhat_gate = ana_gate;
      ana_opt.seed = ana_seed;
      const auto report = analyze_csv(ana_data, ana_edges, ana_opt);
      write_analysis(report, ana_out, ana_format);
      print_report(report);
      std::printf("wrote %zu method rows to %s\n", report.rows.size(), ana_out.c_str());
      return 0;
    };
  });

  // ---- dsep ----
  auto* dsp = app.add_subcommand("dsep", "Check d-separation in a scenario graph");
  std::string dsp_scenario = "2a", dsp_query;
  dsp->add_option("--scenario", dsp_scenario, "Scenario 2a..2f or full");
  dsp->add_option("--query", dsp_query, "e.g. \"Z1 _||_ Y1 | U1,U2\"")->required();
  bool dsp_no_z = false, dsp_no_u = false, dsp_paths = false;
  dsp->add_flag("--no-inherent-z", dsp_no_z, "Drop the latent common root of Z");
  dsp->add_flag("--no-inherent-u", dsp_no_u, "Drop the latent common root of U");
  dsp->add_flag("--paths", dsp_paths, "Also list the back-door trails");
  dsp->callback([&] {
    action = [&]() -> int {
      const auto query = parse_query(dsp_query);
      const auto dag = build_scenario(dsp_scenario, !dsp_no_z, !dsp_no_u);
      const bool separated = d_separated(dag, query.x, query.y, query.cond);
      std::string cond_text;
      for (const auto& node : query.cond)
        cond_text += (cond_text.empty() ? "" : ", ") + node_name(node);
      std::printf("%s: %s _||_ %s%s%s: %s\n", dsp_scenario.c_str(),
                  node_name(query.x).c_str(), node_name(query.y).c_str(),
                  cond_text.empty() ? "" : " | ", cond_text.c_str(),
                  separated ? "d-separated" : "NOT d-separated");
      if (dsp_paths) {
        const auto paths = backdoor_paths(dag, query.x, query.y, query.cond);
        std::printf("back-door trails into %s:\n", node_name(query.x).c_str());
        if (paths.paths.empty()) std::printf("  (none)\n");
        for (const auto& trail : paths.paths)
          std::printf("  [%s] %s\n",
                      trail.open ? "open" : ("blocked: " + trail.blocking_reason).c_str(),
                      trail.rendered.c_str());
      }
      return 0;
    };
  });

  // ---- fit ----
  auto* fit = app.add_subcommand("fit", "One Bayesian fit of a CSV dataset, draws to disk");
  std::string fit_data, fit_edges;
  fit->add_option("--data", fit_data, "CSV with columns y, z, and covariates")
      ->required()
      ->check(CLI::ExistingFile);
  fit->add_option("--edges", fit_edges, "Edge list, one 1-based \"i j\" pair per line")
      ->required()
      ->check(CLI::ExistingFile);
  AnalyzeOptions fit_opt;
  fit->add_flag("--log-exposure", fit_opt.log_exposure,
                "Log-transform the exposure before neighbor averaging");
  int fit_gh = 1;
  fit->add_option("--gh-adjacency", fit_gh, "Adjacency degree of the precision matrices")
      ->check(CLI::IsMember({1, 2}));
  fit->add_option("--exposure-adjacency", fit_opt.exposure_degree,
                  "Adjacency degree defining the neighborhood exposure")
      ->check(CLI::IsMember({1, 2}));
  fit->add_option("--columns", fit_opt.covariate_columns,
                  "Comma list of covariate columns (default: every extra column)")
      ->delimiter(',');
  int fit_iters = default_n_iter, fit_burnin = default_n_burnin, fit_thin = default_thin;
  int fit_chains = 2;
  double fit_gate = 1.02;
  std::uint64_t fit_seed = 1;
  add_sampler_flags(fit, fit_iters, fit_burnin, fit_thin, fit_chains, fit_gate, fit_seed);
  std::string fit_prefix = "fit";
  fit->add_option("--out-prefix", fit_prefix, "Draw files become <prefix>_chainK.csv");
  bool fit_binary = false, fit_latent = false;
  fit->add_flag("--binary", fit_binary, "Write compact binary draws instead of CSV");
  fit->add_flag("--latent", fit_latent, "Also write the latent confounder draws");
  fit->callback([&] {
    action = [&]() -> int {
      const auto prep = prepare_analysis(fit_data, fit_edges, fit_opt);
      const AdjacencyStructure& gh = fit_gh == 2 ? prep.gh_second : prep.gh_first;
      const auto priors = default_priors(prep.data, gh);
      const ModelWorkspace ws(prep.data, gh);
      std::vector<PosteriorChain> chains;
      for (int c = 0; c < fit_chains; ++c) {
        chains.push_back(run_chain(ws, priors, fit_iters, fit_burnin, fit_thin,
                                   splitmix64(fit_seed ^ splitmix64(c + 1))));
        const std::string base = fit_prefix + "_chain" + std::to_string(c + 1);
        if (fit_binary) {
          write_chain_binary(chains.back(), base + ".bin");
        } else {
          write_chain_csv(chains.back(), base + ".csv");
          if (fit_latent) write_chain_latent_csv(chains.back(), base + "_u.csv");
        }
      }
      for (const std::string& param : {"betaZ", "betaZbar"}) {
        const auto s = posterior_summary(chains, param);
        std::printf("%-8s %7.3f (%7.3f, %7.3f)\n", param.c_str(), s.mean, s.lower95,
                    s.upper95);
      }
      std::printf("wrote %d chain file(s) with prefix %s\n", fit_chains, fit_prefix.c_str());
      if (fit_chains >= 2) {
        bool pass = true;
        try {
          const double r_local = split_rhat(chains, "betaZ");
          const double r_interf = split_rhat(chains, "betaZbar");
          std::printf("split R-hat: betaZ %.4f, betaZbar %.4f (gate %.2f)\n", r_local,
                      r_interf, fit_gate);
          pass = r_local < fit_gate && r_interf < fit_gate;
        } catch (const DegenerateChainError& e) {
          std::printf("split R-hat unavailable: %s\n", e.what());
          pass = false;
        }
        if (!pass) {
          std::fflush(stdout);
          std::fprintf(stderr, "convergence gate failed; draws were still written\n");
          return 3;
        }
      }
      return 0;
    };
  });

  // ---- standin ----
  auto* stn = app.add_subcommand(
      "standin", "Generate a synthetic dataset shaped like a real spatial analysis");
  int stn_n = 445;
  std::uint64_t stn_seed = 1;
  stn->add_option("--n", stn_n, "Unit count");
  stn->add_option("--seed", stn_seed, "RNG seed");
  std::string stn_data = "standin_data.csv", stn_edges = "standin_edges.txt";
  stn->add_option("--data-out", stn_data, "Dataset path");
  stn->add_option("--edges-out", stn_edges, "Edge list path");
  stn->callback([&] {
    action = [&]() -> int {
      const auto bundle = synthetic_standin(stn_n, stn_seed);
      write_standin_files(bundle, stn_data, stn_edges);
      long edges = 0;
      for (const auto& nb : bundle.first_degree.neighbors())
        edges += static_cast<long>(nb.size());
      std::printf("wrote %d units, %ld edges to %s and %s\n", stn_n, edges / 2,
                  stn_data.c_str(), stn_edges.c_str());
      std::printf("analyze it with: analyze --data %s --edges %s --log-exposure\n",
                  stn_data.c_str(), stn_edges.c_str());
      return 0;
    };
  });

  std::string config_sink;
  for (auto* cmd : {sim, rep, ana, fit, dsp, stn})
    cmd->add_option("--config", config_sink,
                    "Flat key=value settings file (explicit flags win)");

  std::vector<std::string> args;
  try {
    args = expand_args(argc, argv);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    return action ? action() : 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
