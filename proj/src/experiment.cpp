#include "spcausal/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "spcausal/datagen.hpp"
#include "spcausal/diagnostics.hpp"
#include "spcausal/errors.hpp"
#include "spcausal/ols.hpp"
#include "spcausal/priors.hpp"

namespace spcausal {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Chain seeds come from the same mixing that rng streams use, so a chain
// seeded this way matches make_rng(seed, stream) draw for draw.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream));
}

bool has_method(const ExperimentSpec& spec, const std::string& name) {
  for (const auto& m : spec.methods) {
    if (m == name) return true;
    if (name == "ols" && m == "ols-per-conditioning-set") return true;
  }
  return false;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::min(4u, std::max(1u, hw)));
}

// Index-addressed work queue; the caller's aggregation must not depend on
// completion order, which keeps any thread count equivalent to serial.
void parallel_for(int n_tasks, int n_threads, const std::function<void(int)>& body) {
  if (n_threads <= 1 || n_tasks <= 1) {
    for (int i = 0; i < n_tasks; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  auto worker = [&] {
    while (true) {
      const int i = next.fetch_add(1);
      if (i >= n_tasks) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(n_tasks);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const int count = std::min(n_threads, n_tasks);
  pool.reserve(count);
  for (int t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

void apply_scenario_zeros(ScenarioConfig& cfg) {
  const std::string& id = cfg.scenario_id;
  if (id == "2a") {
    cfg.betaZbar = 0.0;
    cfg.betaUbar = 0.0;
  } else if (id == "2b") {
    cfg.betaU = 0.0;
    cfg.betaUbar = 0.0;
    cfg.betaUZ = 0.0;
    cfg.rho = 0.0;
  } else if (id == "2c") {
    cfg.betaZbar = 0.0;
  } else if (id == "2d") {
    cfg.betaUbar = 0.0;
  } else if (id == "2e") {
    cfg.betaU = 0.0;
    cfg.betaUbar = 0.0;
  } else if (id != "2f" && id != "full") {
    throw std::invalid_argument("unknown scenario id \"" + id + "\"");
  }
}

// Error and coverage of one estimator for one target coefficient.
struct TargetMetrics {
  double error = kNaN;
  bool covered = false;
  bool present = false;
};

struct RepMetrics {
  TargetMetrics local;
  TargetMetrics interference;
  bool included = true;
};

TargetMetrics target_from_fit(const OlsFit& fit, const std::string& name, double truth) {
  TargetMetrics m;
  m.present = true;
  m.error = fit.coefficient(name) - truth;
  const auto [lo, hi] = fit.ci(name);
  m.covered = lo <= truth && truth <= hi;
  return m;
}

void aggregate(ResultRow& row, const std::vector<RepMetrics>& reps) {
  std::vector<double> el, ei;
  int cl = 0, ci = 0, m = 0;
  for (const auto& rep : reps) {
    if (!rep.included) continue;
    ++m;
    if (rep.local.present) {
      el.push_back(rep.local.error);
      cl += rep.local.covered ? 1 : 0;
    }
    if (rep.interference.present) {
      ei.push_back(rep.interference.error);
      ci += rep.interference.covered ? 1 : 0;
    }
  }
  row.n_converged = m;
  auto stats = [](const std::vector<double>& e, int covered, double& bias, double& rmse,
                  double& coverage, double& se) {
    if (e.empty()) {
      bias = rmse = coverage = se = kNaN;
      return;
    }
    double sum = 0.0, sq = 0.0;
    for (double v : e) {
      sum += v;
      sq += v * v;
    }
    const double n = static_cast<double>(e.size());
    bias = sum / n;
    rmse = std::sqrt(sq / n);
    coverage = 100.0 * covered / n;
    if (e.size() > 1) {
      double var = 0.0;
      for (double v : e) var += (v - bias) * (v - bias);
      se = std::sqrt(var / (n - 1.0) / n);
    } else {
      se = kNaN;
    }
  };
  stats(el, cl, row.bias_local, row.rmse_local, row.coverage_local, row.se_local);
  stats(ei, ci, row.bias_interference, row.rmse_interference, row.coverage_interference,
        row.se_interference);
}

// The five conditioning sets of the motivating tables, in column order.
std::vector<ConditioningSet> motivating_sets() {
  ConditioningSet z, zu, zzbar, zzbaru, all;
  zu.include_u = true;
  zzbar.include_zbar = true;
  zzbaru.include_zbar = true;
  zzbaru.include_u = true;
  all.include_zbar = true;
  all.include_u = true;
  all.include_ubar = true;
  return {z, zu, zzbar, zzbaru, all};
}

ResultTable run_motivating(const ExperimentSpec& spec, const std::vector<Variation>& grid,
                           bool binary_pairs) {
  spec.validate();
  const auto sets = motivating_sets();
  const int n_sets = static_cast<int>(sets.size());
  const int reps = spec.n_replications;
  const int threads = resolve_threads(spec.threads);

  ResultTable table;
  for (std::size_t v = 0; v < grid.size(); ++v) {
    const Variation& var = grid[v];
    std::vector<std::vector<RepMetrics>> cells(n_sets, std::vector<RepMetrics>(reps));
    parallel_for(reps, threads, [&](int r) {
      auto rng = make_rng(spec.seed, v * 1000003ULL + static_cast<std::uint64_t>(r));
      Dataset data =
          binary_pairs
              ? generate_paired_binary_dataset(spec.n_units / 2, var.config, rng)
              : generate_network_dataset(line_adjacency(spec.n_units), var.config, 0, rng);
      for (int s = 0; s < n_sets; ++s) {
        const auto fit = fit_ols(data.y, build_design(data, sets[s]));
        RepMetrics rep;
        rep.local = target_from_fit(fit, "z", var.config.betaZ);
        if (sets[s].include_zbar)
          rep.interference = target_from_fit(fit, "zbar", var.config.betaZbar);
        cells[s][r] = rep;
      }
    });
    for (int s = 0; s < n_sets; ++s) {
      ResultRow row;
      row.scenario = var.label;
      row.method = "ols";
      row.model = sets[s].label();
      row.n_units = spec.n_units;
      row.n_replications = reps;
      aggregate(row, cells[s]);
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += "\"\"";
    out += ch;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_csv_row(const std::string& line, const std::string& where) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (quoted) throw ParseError(where + ": unterminated quote");
  fields.push_back(cur);
  return fields;
}

double parse_number(const std::string& s, const std::string& where) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw ParseError(where + ": not a number: \"" + s + "\"");
  return v;
}

std::string format_full(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_cell(double v) {
  if (std::isnan(v)) return "--";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

}  // namespace

void ExperimentSpec::validate() const {
  if (design != "network-line" && design != "paired-gaussian" && design != "paired-binary")
    throw std::invalid_argument("experiment: unknown design \"" + design + "\"");
  if (n_replications < 1)
    throw std::invalid_argument("experiment: n_replications must be >= 1");
  if (methods.empty()) throw std::invalid_argument("experiment: methods must be nonempty");
  for (const auto& m : methods)
    if (m != "ols" && m != "ols-per-conditioning-set" && m != "bayes")
      throw std::invalid_argument("experiment: unknown method \"" + m + "\"");
  if (design != "network-line") {
    if (n_units % 2 != 0)
      throw std::invalid_argument("experiment: paired designs need an even unit count");
    if (n_units < 4) throw std::invalid_argument("experiment: need at least two pairs");
  } else if (n_units < 2) {
    throw std::invalid_argument("experiment: need at least two units");
  }
  if (n_iter <= n_burnin || thin < 1 || n_chains < 1)
    throw std::invalid_argument("experiment: bad sampler settings");
  if (rhat_gate <= 1.0) throw std::invalid_argument("experiment: rhat gate must exceed 1");
}

const std::vector<std::string>& result_columns() {
  static const std::vector<std::string> cols = {
      "scenario",      "method",       "model",
      "n_units",       "n_replications", "n_converged",
      "bias_local",    "rmse_local",   "coverage_local",
      "se_local",      "bias_interference", "rmse_interference",
      "coverage_interference", "se_interference"};
  return cols;
}

ScenarioConfig motivating_pairs_config(const std::string& scenario_id) {
  ScenarioConfig cfg;
  cfg.scenario_id = scenario_id;
  cfg.phiU = 0.7;
  cfg.phiZ = 0.5;
  cfg.betaUZ = 1.0;
  cfg.betaZ = 1.0;
  cfg.betaZbar = 0.8;
  cfg.betaU = 1.0;
  cfg.betaUbar = 0.5;
  cfg.sigmaY2 = 1.0;
  apply_scenario_zeros(cfg);
  return ScenarioConfig::checked(cfg);
}

ScenarioConfig gaussian_config(const std::string& scenario_id, bool paired, int p) {
  ScenarioConfig cfg;
  cfg.scenario_id = scenario_id;
  cfg.phiU = 0.6;
  cfg.phiZ = 0.4;
  cfg.rho = 0.35;
  cfg.tauU2 = paired ? 2.0 : 1.0;
  cfg.tauZ2 = paired ? 2.0 : 1.0;
  cfg.betaZ = 1.0;
  cfg.betaZbar = 0.8;
  cfg.betaU = 1.0;
  cfg.betaUbar = 0.5;
  cfg.sigmaY2 = 1.0;
  if (p == 4) {
    cfg.betaC.resize(4);
    cfg.betaC << 0.06, 0.85, 0.02, 0.33;
    cfg.gammaC.resize(4);
    cfg.gammaC << -0.35, -0.64, 0.49, 0.06;
  } else if (p != 0) {
    throw std::invalid_argument("gaussian_config: p must be 0 or 4");
  }
  apply_scenario_zeros(cfg);
  return ScenarioConfig::checked(cfg);
}

std::vector<Variation> motivating_pair_grid() {
  std::vector<Variation> grid;
  grid.push_back({"2a", motivating_pairs_config("2a")});
  // The reference bias values for the 2b rows separate the (Z) and (Z, U)
  // columns, which is only possible when the exposure still depends on U.
  // They are therefore generated from the 2e configuration (betaUZ kept at
  // its default) with phiZ varied; only the row label says 2b.
  for (double v : {0.7, 0.5, 0.3}) {
    auto cfg = motivating_pairs_config("2e");
    cfg.phiZ = v;
    grid.push_back({"2b phiZ=" + format_number(v), ScenarioConfig::checked(cfg)});
  }
  grid.push_back({"2c", motivating_pairs_config("2c")});
  for (double v : {0.5, 0.0}) {
    auto cfg = motivating_pairs_config("2d");
    cfg.phiZ = v;
    grid.push_back({"2d phiZ=" + format_number(v), ScenarioConfig::checked(cfg)});
  }
  for (double v : {1.5, 1.0, 0.5}) {
    auto cfg = motivating_pairs_config("2e");
    cfg.betaUZ = v;
    grid.push_back({"2e betaUZ=" + format_number(v), ScenarioConfig::checked(cfg)});
  }
  grid.push_back({"2f", motivating_pairs_config("2f")});
  return grid;
}

std::vector<Variation> motivating_network_grid() {
  std::vector<Variation> grid;
  grid.push_back({"2a", gaussian_config("2a", false, 0)});
  // As in the paired grid, the reference (Z) and (Z, U) values for the 2b
  // rows differ, so rho stays at its default instead of 0 and the rows are
  // built from the 2e configuration.
  for (double v : {0.6, 0.4, 0.2}) {
    auto cfg = gaussian_config("2e", false, 0);
    cfg.phiZ = v;
    grid.push_back({"2b phiZ=" + format_number(v), ScenarioConfig::checked(cfg)});
  }
  grid.push_back({"2c", gaussian_config("2c", false, 0)});
  for (double v : {0.4, 0.0}) {
    auto cfg = gaussian_config("2d", false, 0);
    cfg.phiZ = v;
    grid.push_back({"2d phiZ=" + format_number(v), ScenarioConfig::checked(cfg)});
  }
  for (double v : {0.15, 0.35, 0.45}) {
    auto cfg = gaussian_config("2e", false, 0);
    cfg.rho = v;
    grid.push_back({"2e rho=" + format_number(v), ScenarioConfig::checked(cfg)});
  }
  grid.push_back({"2f", gaussian_config("2f", false, 0)});
  return grid;
}

ResultTable run_motivating_pairs(const ExperimentSpec& spec) {
  if (spec.design != "paired-binary")
    throw std::invalid_argument("run_motivating_pairs: design must be paired-binary");
  return run_motivating(spec, motivating_pair_grid(), true);
}

ResultTable run_motivating_network(const ExperimentSpec& spec) {
  if (spec.design != "network-line")
    throw std::invalid_argument("run_motivating_network: design must be network-line");
  return run_motivating(spec, motivating_network_grid(), false);
}

ResultTable run_main_simulation(const ExperimentSpec& spec) {
  spec.validate();
  spec.config.validate();
  if (spec.design == "paired-binary")
    throw std::invalid_argument(
        "main simulation: the latent-confounder model needs a Gaussian exposure; "
        "use design network-line or paired-gaussian");
  const bool want_ols = has_method(spec, "ols");
  const bool want_bayes = has_method(spec, "bayes");
  const int reps = spec.n_replications;
  const int threads = resolve_threads(spec.threads);
  const double truth_local = spec.config.betaZ;
  const double truth_interf = spec.config.betaZbar;

  std::vector<RepMetrics> ols_cells(reps), bayes_cells(reps);
  parallel_for(reps, threads, [&](int r) {
    const std::uint64_t base = static_cast<std::uint64_t>(r) * 16ULL;
    auto data_rng = make_rng(spec.seed, base);
    Dataset data = spec.design == "network-line"
                       ? generate_network_dataset(line_adjacency(spec.n_units), spec.config,
                                                  4, data_rng)
                       : generate_network_dataset(pair_adjacency(spec.n_units / 2),
                                                  spec.config, 4, data_rng);
    if (want_ols) {
      ConditioningSet measured;
      measured.include_zbar = true;
      measured.include_c = true;
      const auto fit = fit_ols(data.y, build_design(data, measured));
      RepMetrics rep;
      rep.local = target_from_fit(fit, "z", truth_local);
      rep.interference = target_from_fit(fit, "zbar", truth_interf);
      ols_cells[r] = rep;
    }
    if (want_bayes) {
      RepMetrics rep;
      try {
        const auto priors = default_priors(data);
        const ModelWorkspace ws(data);
        std::vector<PosteriorChain> chains;
        chains.reserve(spec.n_chains);
        for (int c = 0; c < spec.n_chains; ++c)
          chains.push_back(run_chain(ws, priors, spec.n_iter, spec.n_burnin, spec.thin,
                                     derive_seed(spec.seed, base + 1 + c)));
        bool converged = true;
        if (spec.n_chains >= 2) {
          converged = split_rhat(chains, "betaZ") < spec.rhat_gate &&
                      split_rhat(chains, "betaZbar") < spec.rhat_gate;
        }
        if (!converged) {
          rep.included = false;
        } else {
          const auto local = posterior_summary(chains, "betaZ");
          const auto interf = posterior_summary(chains, "betaZbar");
          rep.local.present = true;
          rep.local.error = local.mean - truth_local;
          rep.local.covered = local.lower95 <= truth_local && truth_local <= local.upper95;
          rep.interference.present = true;
          rep.interference.error = interf.mean - truth_interf;
          rep.interference.covered =
              interf.lower95 <= truth_interf && truth_interf <= interf.upper95;
        }
      } catch (const std::runtime_error&) {
        rep.included = false;
      }
      bayes_cells[r] = rep;
    }
  });

  ResultTable table;
  if (want_ols) {
    ResultRow row;
    row.scenario = spec.scenario_id;
    row.method = "ols";
    row.model = "(Z, Zbar, C)";
    row.n_units = spec.n_units;
    row.n_replications = reps;
    aggregate(row, ols_cells);
    table.rows.push_back(std::move(row));
  }
  if (want_bayes) {
    ResultRow row;
    row.scenario = spec.scenario_id;
    row.method = "bayes";
    row.model = "spatial-latent";
    row.n_units = spec.n_units;
    row.n_replications = reps;
    aggregate(row, bayes_cells);
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_table(const ResultTable& table, const std::string& path,
                 const std::string& format) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open for writing: " + path);
  const auto& cols = result_columns();
  if (format == "csv") {
    for (std::size_t i = 0; i < cols.size(); ++i)
      out << (i ? "," : "") << cols[i];
    out << "\n";
    for (const auto& row : table.rows) {
      out << csv_quote(row.scenario) << ',' << csv_quote(row.method) << ','
          << csv_quote(row.model) << ',' << row.n_units << ',' << row.n_replications << ','
          << row.n_converged << ',' << format_full(row.bias_local) << ','
          << format_full(row.rmse_local) << ',' << format_full(row.coverage_local) << ','
          << format_full(row.se_local) << ',' << format_full(row.bias_interference) << ','
          << format_full(row.rmse_interference) << ','
          << format_full(row.coverage_interference) << ','
          << format_full(row.se_interference) << "\n";
    }
  } else if (format == "markdown") {
    out << "| " << cols[0];
    for (std::size_t i = 1; i < cols.size(); ++i) out << " | " << cols[i];
    out << " |\n|";
    for (std::size_t i = 0; i < cols.size(); ++i) out << " --- |";
    out << "\n";
    std::string last_scenario;
    for (const auto& row : table.rows) {
      const bool new_group = row.scenario != last_scenario;
      last_scenario = row.scenario;
      out << "| " << (new_group ? row.scenario : std::string()) << " | " << row.method
          << " | " << row.model << " | " << row.n_units << " | " << row.n_replications
          << " | " << row.n_converged << " | " << format_cell(row.bias_local) << " | "
          << format_cell(row.rmse_local) << " | " << format_cell(row.coverage_local)
          << " | " << format_cell(row.se_local) << " | "
          << format_cell(row.bias_interference) << " | "
          << format_cell(row.rmse_interference) << " | "
          << format_cell(row.coverage_interference) << " | "
          << format_cell(row.se_interference) << " |\n";
    }
  } else {
    throw std::invalid_argument("write_table: format must be csv or markdown");
  }
  if (!out) throw ParseError("write failed: " + path);
}

ResultTable read_table_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_csv_row(line, path);
  const auto& cols = result_columns();
  if (header.size() != cols.size())
    throw ParseError(path + ": wrong column count in header");
  for (std::size_t i = 0; i < cols.size(); ++i)
    if (header[i] != cols[i])
      throw ParseError(path + ": unexpected column \"" + header[i] + "\"");

  ResultTable table;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = path + ":" + std::to_string(lineno);
    const auto f = split_csv_row(line, where);
    if (f.size() != cols.size()) throw ParseError(where + ": wrong field count");
    ResultRow row;
    row.scenario = f[0];
    row.method = f[1];
    row.model = f[2];
    row.n_units = static_cast<int>(parse_number(f[3], where));
    row.n_replications = static_cast<int>(parse_number(f[4], where));
    row.n_converged = static_cast<int>(parse_number(f[5], where));
    row.bias_local = parse_number(f[6], where);
    row.rmse_local = parse_number(f[7], where);
    row.coverage_local = parse_number(f[8], where);
    row.se_local = parse_number(f[9], where);
    row.bias_interference = parse_number(f[10], where);
    row.rmse_interference = parse_number(f[11], where);
    row.coverage_interference = parse_number(f[12], where);
    row.se_interference = parse_number(f[13], where);
    table.rows.push_back(std::move(row));
  }
  return table;
}

AnalysisData read_analysis_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_csv_row(line, path);
  int y_col = -1, z_col = -1;
  std::vector<int> c_cols;
  std::vector<std::string> c_names;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "y")
      y_col = static_cast<int>(i);
    else if (header[i] == "z")
      z_col = static_cast<int>(i);
    else {
      c_cols.push_back(static_cast<int>(i));
      c_names.push_back(header[i]);
    }
  }
  if (y_col < 0) throw ParseError(path + ": missing required column \"y\"");
  if (z_col < 0) throw ParseError(path + ": missing required column \"z\"");

  std::vector<std::vector<double>> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = path + ":" + std::to_string(lineno);
    const auto f = split_csv_row(line, where);
    if (f.size() != header.size()) throw ParseError(where + ": wrong field count");
    std::vector<double> vals;
    vals.reserve(f.size());
    for (const auto& s : f) vals.push_back(parse_number(s, where));
    rows.push_back(std::move(vals));
  }
  const int n = static_cast<int>(rows.size());
  if (n == 0) throw ParseError(path + ": no data rows");

  AnalysisData data;
  data.covariate_names = c_names;
  data.y.resize(n);
  data.z.resize(n);
  data.c.resize(n, static_cast<int>(c_cols.size()));
  for (int i = 0; i < n; ++i) {
    data.y(i) = rows[i][y_col];
    data.z(i) = rows[i][z_col];
    for (std::size_t j = 0; j < c_cols.size(); ++j) data.c(i, j) = rows[i][c_cols[j]];
  }
  return data;
}

PreparedAnalysis prepare_analysis(const std::string& data_path,
                                  const std::string& edges_path,
                                  const AnalyzeOptions& options) {
  if (options.exposure_degree != 1 && options.exposure_degree != 2)
    throw std::invalid_argument("analyze: exposure adjacency degree must be 1 or 2");
  if (options.gh_degree && *options.gh_degree != 1 && *options.gh_degree != 2)
    throw std::invalid_argument("analyze: precision adjacency degree must be 1 or 2");

  AnalysisData raw = read_analysis_csv(data_path);
  const int n_total = static_cast<int>(raw.y.size());
  const AdjacencyStructure first(read_edge_list(edges_path, n_total));

  // Restrict to requested covariates, keeping file order.
  if (!options.covariate_columns.empty()) {
    std::vector<int> pick;
    for (const auto& want : options.covariate_columns) {
      const auto it =
          std::find(raw.covariate_names.begin(), raw.covariate_names.end(), want);
      if (it == raw.covariate_names.end())
        throw ParseError(data_path + ": missing covariate column \"" + want + "\"");
      pick.push_back(static_cast<int>(it - raw.covariate_names.begin()));
    }
    Eigen::MatrixXd c(n_total, pick.size());
    std::vector<std::string> names;
    for (std::size_t j = 0; j < pick.size(); ++j) {
      c.col(j) = raw.c.col(pick[j]);
      names.push_back(raw.covariate_names[pick[j]]);
    }
    raw.c = std::move(c);
    raw.covariate_names = std::move(names);
  }

  // Units with no neighbor under the exposure-mapping adjacency have no
  // defined neighborhood exposure; drop them up front. Loss of all first
  // degree neighbors implies loss of all second degree ones, so one pass
  // settles both degrees.
  std::vector<int> dropped;
  std::vector<int> keep;
  for (int i = 0; i < n_total; ++i) {
    if (first.neighbors()[i].empty())
      dropped.push_back(i + 1);
    else
      keep.push_back(i);
  }
  if (!dropped.empty()) {
    std::cerr << "warning: dropping " << dropped.size() << " unit(s) with no neighbor:";
    for (int i : dropped) std::cerr << ' ' << i;
    std::cerr << "\n";
  }
  const int n = static_cast<int>(keep.size());
  if (n < 10) throw InsufficientDataError("analyze: fewer than 10 connected units");

  AdjacencyStructure gh1 = induced_subgraph(first, keep);
  AdjacencyStructure gh2 = second_degree(gh1);

  Eigen::VectorXd y(n), z(n);
  Eigen::MatrixXd c(n, raw.c.cols());
  for (int i = 0; i < n; ++i) {
    y(i) = raw.y(keep[i]);
    z(i) = raw.z(keep[i]);
    c.row(i) = raw.c.row(keep[i]);
  }
  if (options.log_exposure) {
    if (z.minCoeff() <= 0.0)
      throw std::invalid_argument(
          "analyze: log exposure requested but the exposure has nonpositive values");
    z = z.array().log();
  }
  for (Eigen::Index j = 0; j < c.cols(); ++j) {
    const double mean = c.col(j).mean();
    const Eigen::VectorXd centered = c.col(j).array() - mean;
    const double sd = std::sqrt(centered.squaredNorm() / std::max(1, n - 1));
    if (sd < 1e-12)
      throw ParseError(data_path + ": covariate \"" + raw.covariate_names[j] +
                       "\" is constant");
    c.col(j) = centered / sd;
  }

  PreparedAnalysis prep{Dataset(options.exposure_degree == 2 ? gh2 : gh1),
                        std::move(gh1),
                        std::move(gh2),
                        n_total,
                        std::move(dropped),
                        std::move(raw.covariate_names)};
  prep.data.y = y;
  prep.data.z = z;
  prep.data.zbar = neighbor_average(prep.data.adjacency, z);
  prep.data.c = c;
  return prep;
}

AnalysisReport analyze_csv(const std::string& data_path, const std::string& edges_path,
                           const AnalyzeOptions& options) {
  const PreparedAnalysis prep = prepare_analysis(data_path, edges_path, options);
  const Dataset& data = prep.data;

  AnalysisReport report;
  report.n_total = prep.n_total;
  report.n_kept = data.n();
  report.dropped_units = prep.dropped_units;
  report.covariate_names = prep.covariate_names;

  ConditioningSet local_only, local_nbhd;
  local_only.include_c = true;
  local_nbhd.include_zbar = true;
  local_nbhd.include_c = true;
  {
    const auto fit = fit_ols(data.y, build_design(data, local_only));
    MethodEstimate row;
    row.method = "OLS local exposure";
    row.local = fit.coefficient("z");
    std::tie(row.local_lower, row.local_upper) = fit.ci("z");
    report.rows.push_back(std::move(row));
  }
  {
    const auto fit = fit_ols(data.y, build_design(data, local_nbhd));
    MethodEstimate row;
    row.method = "OLS local and neighborhood exposure";
    row.local = fit.coefficient("z");
    std::tie(row.local_lower, row.local_upper) = fit.ci("z");
    row.has_interference = true;
    row.interference = fit.coefficient("zbar");
    std::tie(row.interference_lower, row.interference_upper) = fit.ci("zbar");
    report.rows.push_back(std::move(row));
  }

  if (options.run_bayes) {
    std::vector<int> degrees;
    if (options.gh_degree)
      degrees = {*options.gh_degree};
    else
      degrees = {1, 2};
    for (int degree : degrees) {
      const AdjacencyStructure& gh = degree == 2 ? prep.gh_second : prep.gh_first;
      const auto priors = default_priors(data, gh);
      const ModelWorkspace ws(data, gh);
      std::vector<PosteriorChain> chains;
      for (int ch = 0; ch < options.n_chains; ++ch)
        chains.push_back(run_chain(ws, priors, options.n_iter, options.n_burnin,
                                   options.thin,
                                   derive_seed(options.seed, 100ULL * degree + ch)));
      MethodEstimate row;
      row.method = degree == 2 ? "Spatial model second degree" : "Spatial model first degree";
      row.bayesian = true;
      const auto local = posterior_summary(chains, "betaZ");
      const auto interf = posterior_summary(chains, "betaZbar");
      row.local = local.mean;
      row.local_lower = local.lower95;
      row.local_upper = local.upper95;
      row.has_interference = true;
      row.interference = interf.mean;
      row.interference_lower = interf.lower95;
      row.interference_upper = interf.upper95;
      if (options.n_chains >= 2) {
        try {
          row.rhat_local = split_rhat(chains, "betaZ");
          row.rhat_interference = split_rhat(chains, "betaZbar");
          row.converged = row.rhat_local < options.rhat_gate &&
                          row.rhat_interference < options.rhat_gate;
        } catch (const DegenerateChainError&) {
          row.rhat_local = row.rhat_interference = kNaN;
          row.converged = false;
        }
      } else {
        row.rhat_local = row.rhat_interference = kNaN;
      }
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

void write_analysis(const AnalysisReport& report, const std::string& path,
                    const std::string& format) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open for writing: " + path);
  if (format == "csv") {
    out << "method,local,local_lower,local_upper,interference,interference_lower,"
           "interference_upper,converged,rhat_local,rhat_interference\n";
    for (const auto& row : report.rows) {
      out << csv_quote(row.method) << ',' << format_full(row.local) << ','
          << format_full(row.local_lower) << ',' << format_full(row.local_upper) << ',';
      if (row.has_interference)
        out << format_full(row.interference) << ',' << format_full(row.interference_lower)
            << ',' << format_full(row.interference_upper);
      else
        out << "nan,nan,nan";
      out << ',' << (row.converged ? 1 : 0) << ',' << format_full(row.rhat_local) << ','
          << format_full(row.rhat_interference) << "\n";
    }
  } else if (format == "markdown") {
    out << "| method | local estimate | local 95% CI | interference estimate | "
           "interference 95% CI |\n| --- | --- | --- | --- | --- |\n";
    char buf[96];
    for (const auto& row : report.rows) {
      std::snprintf(buf, sizeof(buf), "%.2f | (%.2f, %.2f)", row.local, row.local_lower,
                    row.local_upper);
      out << "| " << row.method << (row.converged ? "" : " (not converged)") << " | " << buf;
      if (row.has_interference) {
        std::snprintf(buf, sizeof(buf), "%.2f | (%.2f, %.2f)", row.interference,
                      row.interference_lower, row.interference_upper);
        out << " | " << buf << " |\n";
      } else {
        out << " | -- | -- |\n";
      }
    }
  } else {
    throw std::invalid_argument("write_analysis: format must be csv or markdown");
  }
  if (!out) throw ParseError("write failed: " + path);
}

StandinBundle synthetic_standin(int n, std::uint64_t seed) {
  if (n < 10) throw std::invalid_argument("synthetic_standin: n must be >= 10");
  auto point_rng = make_rng(seed, 0);
  std::uniform_real_distribution<double> unif;
  std::vector<double> px(n), py(n);
  for (int i = 0; i < n; ++i) {
    px[i] = unif(point_rng.engine);
    py[i] = unif(point_rng.engine);
  }

  // Gabriel graph: i-j are neighbors when the disc with diameter ij holds no
  // other point. Planar, connected (it contains the Euclidean minimum
  // spanning tree), and its degree distribution is county-like.
  std::vector<std::vector<int>> nb(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double mx = 0.5 * (px[i] + px[j]);
      const double my = 0.5 * (py[i] + py[j]);
      const double r2 = (px[i] - mx) * (px[i] - mx) + (py[i] - my) * (py[i] - my);
      bool empty = true;
      for (int k = 0; k < n && empty; ++k) {
        if (k == i || k == j) continue;
        const double d2 = (px[k] - mx) * (px[k] - mx) + (py[k] - my) * (py[k] - my);
        if (d2 < r2) empty = false;
      }
      if (empty) {
        nb[i].push_back(j);
        nb[j].push_back(i);
      }
    }
  }
  AdjacencyStructure first(n, std::move(nb));

  // The structural model lives on the second-degree graph, mirroring an
  // analysis whose neighborhood exposure spans two hops.
  auto data_rng = make_rng(seed, 1);
  Dataset data = generate_network_dataset(second_degree(first),
                                          gaussian_config("2f", false, 4), 4, data_rng);
  return StandinBundle{std::move(data), std::move(first)};
}

void write_standin_files(const StandinBundle& bundle, const std::string& data_path,
                         const std::string& edges_path) {
  const Dataset& data = bundle.data;
  std::ofstream out(data_path);
  if (!out) throw ParseError("cannot open for writing: " + data_path);
  out << "y,z";
  for (int j = 0; j < data.p(); ++j) out << ",c" << (j + 1);
  out << "\n";
  for (int i = 0; i < data.n(); ++i) {
    // The exposure ships on its raw positive scale; analyses log it back.
    out << format_full(data.y(i)) << ',' << format_full(std::exp(data.z(i)));
    for (int j = 0; j < data.p(); ++j) out << ',' << format_full(data.c(i, j));
    out << "\n";
  }
  if (!out) throw ParseError("write failed: " + data_path);

  std::ofstream eout(edges_path);
  if (!eout) throw ParseError("cannot open for writing: " + edges_path);
  eout << "# edge list, 1-based indices\n";
  for (int i = 0; i < bundle.first_degree.n(); ++i)
    for (int j : bundle.first_degree.neighbors()[i])
      if (j > i) eout << (i + 1) << ' ' << (j + 1) << "\n";
  if (!eout) throw ParseError("write failed: " + edges_path);
}

}  // namespace spcausal
