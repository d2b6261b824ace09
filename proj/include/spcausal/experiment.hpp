#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spcausal/dataset.hpp"
#include "spcausal/sampler.hpp"
#include "spcausal/scenario_config.hpp"

namespace spcausal {

// A simulation run: which design and scenario, at what size, with which
// estimation methods, under which seed. The embedded ScenarioConfig carries
// any parameter overrides; the sampler settings apply to the bayes method.
struct ExperimentSpec {
  std::string design = "network-line";  // network-line, paired-gaussian, paired-binary
  std::string scenario_id = "2a";
  int n_units = 200;  // total units; paired designs need an even count
  int n_replications = 100;
  std::vector<std::string> methods = {"ols"};  // subset of {ols, bayes}
  std::uint64_t seed = 1;
  int threads = 0;  // 0 = pick from the machine

  ScenarioConfig config;

  int n_iter = default_n_iter;
  int n_burnin = default_n_burnin;
  int thin = default_thin;
  int n_chains = 2;
  double rhat_gate = 1.02;

  void validate() const;
};

// Aggregates for one (scenario variation, method, model) cell. Conditioning
// sets without the neighborhood exposure leave the interference columns NaN.
struct ResultRow {
  std::string scenario;
  std::string method;
  std::string model;
  int n_units = 0;
  int n_replications = 0;
  int n_converged = 0;

  double bias_local = 0.0;
  double rmse_local = 0.0;
  double coverage_local = 0.0;  // percent
  double se_local = 0.0;        // MC standard error of the bias
  double bias_interference = 0.0;
  double rmse_interference = 0.0;
  double coverage_interference = 0.0;
  double se_interference = 0.0;
};

struct ResultTable {
  std::vector<ResultRow> rows;
};

// Column names in file order.
const std::vector<std::string>& result_columns();

// One cell of the motivating-table grids: a scenario with one spatial
// parameter possibly moved off its default.
struct Variation {
  std::string label;
  ScenarioConfig config;
};

// Binary-pair design defaults with the scenario's zero constraints applied.
ScenarioConfig motivating_pairs_config(const std::string& scenario_id);
// Gaussian CAR design defaults (covariate count p), scenario zeros applied.
ScenarioConfig gaussian_config(const std::string& scenario_id, bool paired, int p);

// The full row grids of the two motivating studies.
std::vector<Variation> motivating_pair_grid();
std::vector<Variation> motivating_network_grid();

// Motivating studies: OLS biases across the five conditioning sets.
ResultTable run_motivating_pairs(const ExperimentSpec& spec);
ResultTable run_motivating_network(const ExperimentSpec& spec);

// Main comparison: OLS on measured covariates only versus the Bayesian
// latent-confounder model with a convergence gate.
ResultTable run_main_simulation(const ExperimentSpec& spec);

void write_table(const ResultTable& table, const std::string& path,
                 const std::string& format);
ResultTable read_table_csv(const std::string& path);

// Analysis of a user-provided dataset: generic CSV plus an edge list.
struct AnalyzeOptions {
  bool log_exposure = false;
  int exposure_degree = 2;          // adjacency power for neighbor averaging
  std::optional<int> gh_degree;     // restrict the model fits to one degree
  std::vector<std::string> covariate_columns;  // empty = every extra column
  bool run_bayes = true;

  std::uint64_t seed = 1;
  int n_iter = default_n_iter;
  int n_burnin = default_n_burnin;
  int thin = default_thin;
  int n_chains = 2;
  double rhat_gate = 1.02;
};

struct MethodEstimate {
  std::string method;
  double local = 0.0;
  double local_lower = 0.0;
  double local_upper = 0.0;
  bool has_interference = false;
  double interference = 0.0;
  double interference_lower = 0.0;
  double interference_upper = 0.0;
  bool bayesian = false;
  bool converged = true;
  double rhat_local = 0.0;
  double rhat_interference = 0.0;
};

struct AnalysisReport {
  int n_total = 0;
  int n_kept = 0;
  std::vector<int> dropped_units;  // 1-based row numbers of isolated units
  std::vector<std::string> covariate_names;
  std::vector<MethodEstimate> rows;
};

// Columns y and z are required by name; every remaining column is a covariate
// unless an explicit list narrows them.
struct AnalysisData {
  std::vector<std::string> covariate_names;
  Eigen::VectorXd y, z;
  Eigen::MatrixXd c;
};
AnalysisData read_analysis_csv(const std::string& path);

// Data preparation shared by the report and the single-fit path: load and
// restrict columns, drop isolated units, build first- and second-degree
// adjacencies on the kept units, transform the exposure, standardize the
// covariates. The dataset carries the exposure-mapping adjacency.
struct PreparedAnalysis {
  Dataset data;
  AdjacencyStructure gh_first;
  AdjacencyStructure gh_second;
  int n_total = 0;
  std::vector<int> dropped_units;
  std::vector<std::string> covariate_names;
};
PreparedAnalysis prepare_analysis(const std::string& data_path,
                                  const std::string& edges_path,
                                  const AnalyzeOptions& options);

AnalysisReport analyze_csv(const std::string& data_path, const std::string& edges_path,
                           const AnalyzeOptions& options);
void write_analysis(const AnalysisReport& report, const std::string& path,
                    const std::string& format);

// Synthetic dataset for exercising the analysis pipeline end to end: a
// Gabriel graph on uniform random points (planar, connected, county-like
// degree distribution) with the full structural model on its second-degree
// closure. The first-degree graph is what an edge file would record.
struct StandinBundle {
  Dataset data;
  AdjacencyStructure first_degree;
};
StandinBundle synthetic_standin(int n, std::uint64_t seed);
// Writes the analysis schema: y, the exposure exponentiated onto a positive
// raw scale, covariates; edges are the first-degree graph.
void write_standin_files(const StandinBundle& bundle, const std::string& data_path,
                         const std::string& edges_path);

}  // namespace spcausal
