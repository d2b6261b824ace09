#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "spcausal/adjacency.hpp"
#include "spcausal/errors.hpp"
#include "spcausal/experiment.hpp"

using namespace spcausal;

namespace {

bool same_value(double a, double b) {
  if (std::isnan(a) && std::isnan(b)) return true;
  return a == b;
}

bool same_table(const ResultTable& a, const ResultTable& b) {
  if (a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const auto& x = a.rows[i];
    const auto& y = b.rows[i];
    if (x.scenario != y.scenario || x.method != y.method || x.model != y.model)
      return false;
    if (x.n_units != y.n_units || x.n_replications != y.n_replications ||
        x.n_converged != y.n_converged)
      return false;
    if (!same_value(x.bias_local, y.bias_local) || !same_value(x.rmse_local, y.rmse_local) ||
        !same_value(x.coverage_local, y.coverage_local) ||
        !same_value(x.se_local, y.se_local) ||
        !same_value(x.bias_interference, y.bias_interference) ||
        !same_value(x.rmse_interference, y.rmse_interference) ||
        !same_value(x.coverage_interference, y.coverage_interference) ||
        !same_value(x.se_interference, y.se_interference))
      return false;
  }
  return true;
}

ExperimentSpec small_pairs_spec() {
  ExperimentSpec spec;
  spec.design = "paired-binary";
  spec.n_units = 60;
  spec.n_replications = 8;
  spec.seed = 31;
  spec.threads = 1;
  return spec;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("motivating grids have eleven variations in table order") {
  const auto pairs = motivating_pair_grid();
  REQUIRE(pairs.size() == 11);
  CHECK(pairs[0].label == "2a");
  CHECK(pairs[1].label == "2b phiZ=0.7");
  CHECK(pairs[2].label == "2b phiZ=0.5");
  CHECK(pairs[3].label == "2b phiZ=0.3");
  CHECK(pairs[4].label == "2c");
  CHECK(pairs[5].label == "2d phiZ=0.5");
  CHECK(pairs[6].label == "2d phiZ=0");
  CHECK(pairs[7].label == "2e betaUZ=1.5");
  CHECK(pairs[8].label == "2e betaUZ=1");
  CHECK(pairs[9].label == "2e betaUZ=0.5");
  CHECK(pairs[10].label == "2f");
  for (const auto& v : pairs) CHECK_NOTHROW(v.config.validate());

  const auto network = motivating_network_grid();
  REQUIRE(network.size() == 11);
  CHECK(network[1].label == "2b phiZ=0.6");
  CHECK(network[3].label == "2b phiZ=0.2");
  CHECK(network[6].label == "2d phiZ=0");
  CHECK(network[7].label == "2e rho=0.15");
  CHECK(network[9].label == "2e rho=0.45");
  for (const auto& v : network) {
    CHECK_NOTHROW(v.config.validate());
    CHECK(v.config.p() == 0);
  }
}

TEST_CASE("scenario zero constraints are baked into the grid configs") {
  const auto pairs = motivating_pair_grid();
  CHECK(pairs[0].config.betaZbar == 0.0);  // no interference arrow
  CHECK(pairs[0].config.betaUbar == 0.0);
  // The 2b rows come from the 2e configuration (the reference values need
  // the U-to-exposure link), so only the outcome coefficients are zeroed.
  CHECK(pairs[1].config.betaU == 0.0);
  CHECK(pairs[1].config.betaUZ == 1.0);
  CHECK(pairs[1].config.phiZ == 0.7);
  CHECK(pairs[4].config.betaZbar == 0.0);
  CHECK(pairs[5].config.betaUbar == 0.0);
  CHECK(pairs[7].config.betaU == 0.0);  // exposure-only confounder path
  CHECK(pairs[7].config.betaUZ == 1.5);
  CHECK(pairs[10].config.betaU == 1.0);
  CHECK(pairs[10].config.betaUbar == 0.5);

  const auto network = motivating_network_grid();
  CHECK(network[1].config.rho == 0.35);
  CHECK(network[1].config.betaU == 0.0);
  CHECK(network[1].config.phiZ == 0.6);
  CHECK(network[7].config.rho == 0.15);
  CHECK(network[7].config.betaU == 0.0);
  CHECK(network[10].config.rho == 0.35);
}

TEST_CASE("config builders reject bad inputs") {
  CHECK_THROWS_AS(motivating_pairs_config("2g"), std::invalid_argument);
  CHECK_THROWS_AS(gaussian_config("2f", false, 3), std::invalid_argument);
  const auto paired = gaussian_config("2f", true, 4);
  CHECK(paired.tauU2 == 2.0);
  CHECK(paired.betaC.size() == 4);
  CHECK(paired.betaC(1) == 0.85);
  CHECK(paired.gammaC(0) == -0.35);
  const auto network = gaussian_config("2f", false, 0);
  CHECK(network.tauU2 == 1.0);
  CHECK(network.phiU == 0.6);
  CHECK(network.phiZ == 0.4);
  CHECK(network.rho == 0.35);
}

TEST_CASE("experiment spec validation") {
  ExperimentSpec spec;
  CHECK_NOTHROW(spec.validate());
  spec.design = "triangular";
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = ExperimentSpec();
  spec.design = "paired-binary";
  spec.n_units = 61;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = ExperimentSpec();
  spec.methods = {"ridge"};
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = ExperimentSpec();
  spec.methods = {};
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = ExperimentSpec();
  spec.n_iter = 100;
  spec.n_burnin = 100;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = ExperimentSpec();
  spec.rhat_gate = 1.0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("paired motivating study covers every variation and conditioning set") {
  const auto spec = small_pairs_spec();
  const auto table = run_motivating_pairs(spec);
  REQUIRE(table.rows.size() == 55);

  const std::vector<std::string> models = {"(Z)", "(Z, U)", "(Z, Zbar)", "(Z, Zbar, U)",
                                           "(Z, Zbar, U, Ubar)"};
  const auto grid = motivating_pair_grid();
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    CHECK(row.scenario == grid[i / 5].label);
    CHECK(row.model == models[i % 5]);
    CHECK(row.method == "ols");
    CHECK(row.n_units == 60);
    CHECK(row.n_replications == 8);
    CHECK(row.n_converged == 8);
    CHECK(std::isfinite(row.bias_local));
    CHECK(row.rmse_local >= std::fabs(row.bias_local));
    CHECK(row.coverage_local >= 0.0);
    CHECK(row.coverage_local <= 100.0);
    const bool has_zbar = row.model.find("Zbar") != std::string::npos;
    CHECK(std::isfinite(row.bias_interference) == has_zbar);
    if (has_zbar) CHECK(row.rmse_interference >= std::fabs(row.bias_interference));
  }
}

TEST_CASE("unconfounded scenario with the right conditioning set is unbiased") {
  auto spec = small_pairs_spec();
  spec.n_units = 300;
  spec.n_replications = 30;
  const auto table = run_motivating_pairs(spec);
  // 2b rows sit at indices 5..20; model (Z, Zbar) is offset 2 in each block.
  for (int block : {1, 2, 3}) {
    const auto& row = table.rows[block * 5 + 2];
    CHECK(row.scenario.substr(0, 2) == "2b");
    CHECK(row.model == "(Z, Zbar)");
    CHECK(std::fabs(row.bias_local) < 5.0 * row.se_local);
    CHECK(row.coverage_local > 60.0);
  }
}

TEST_CASE("motivating runners insist on their designs") {
  auto spec = small_pairs_spec();
  spec.design = "network-line";
  CHECK_THROWS_AS(run_motivating_pairs(spec), std::invalid_argument);
  spec = small_pairs_spec();
  CHECK_THROWS_AS(run_motivating_network(spec), std::invalid_argument);
}

TEST_CASE("replications are deterministic in the seed and thread count") {
  auto spec = small_pairs_spec();
  spec.n_replications = 6;
  const auto serial = run_motivating_pairs(spec);
  const auto again = run_motivating_pairs(spec);
  CHECK(same_table(serial, again));
  spec.threads = 3;
  const auto threaded = run_motivating_pairs(spec);
  CHECK(same_table(serial, threaded));
  spec.threads = 1;
  spec.seed = 32;
  const auto other = run_motivating_pairs(spec);
  CHECK_FALSE(same_table(serial, other));
}

TEST_CASE("main simulation produces one row per method") {
  ExperimentSpec spec;
  spec.design = "network-line";
  spec.scenario_id = "2a";
  spec.config = gaussian_config("2a", false, 4);
  spec.n_units = 60;
  spec.n_replications = 4;
  spec.methods = {"ols", "bayes"};
  spec.seed = 7;
  spec.threads = 1;
  spec.n_iter = 700;
  spec.n_burnin = 250;
  spec.thin = 5;
  spec.n_chains = 2;

  const auto table = run_main_simulation(spec);
  REQUIRE(table.rows.size() == 2);
  const auto& ols = table.rows[0];
  CHECK(ols.method == "ols");
  CHECK(ols.model == "(Z, Zbar, C)");
  CHECK(ols.n_converged == 4);
  CHECK(std::isfinite(ols.bias_local));
  CHECK(std::isfinite(ols.bias_interference));
  CHECK(ols.rmse_local >= std::fabs(ols.bias_local));

  const auto& bayes = table.rows[1];
  CHECK(bayes.method == "bayes");
  CHECK(bayes.n_converged <= 4);
  if (bayes.n_converged > 0) {
    CHECK(std::isfinite(bayes.bias_local));
    CHECK(std::isfinite(bayes.bias_interference));
  } else {
    CHECK(std::isnan(bayes.bias_local));
  }

  auto threaded = spec;
  threaded.threads = 2;
  CHECK(same_table(table, run_main_simulation(threaded)));

  auto ols_only = spec;
  ols_only.methods = {"ols-per-conditioning-set"};
  const auto one = run_main_simulation(ols_only);
  REQUIRE(one.rows.size() == 1);
  CHECK(one.rows[0].method == "ols");
  CHECK(same_table(ResultTable{{table.rows[0]}}, one));
}

TEST_CASE("result tables round-trip through csv bit for bit") {
  ResultTable table;
  ResultRow row;
  row.scenario = "2b phiZ=0.7";
  row.method = "ols";
  row.model = "(Z, Zbar, U)";
  row.n_units = 60;
  row.n_replications = 8;
  row.n_converged = 8;
  row.bias_local = -0.123456789012345678;
  row.rmse_local = 0.3;
  row.coverage_local = 87.5;
  row.se_local = 0.01;
  row.bias_interference = std::nan("");
  row.rmse_interference = std::nan("");
  row.coverage_interference = std::nan("");
  row.se_interference = std::nan("");
  table.rows.push_back(row);
  row.scenario = "odd \"label\", with quote";
  row.bias_interference = 1.0 / 3.0;
  table.rows.push_back(row);

  write_table(table, "tmp_table.csv", "csv");
  const auto loaded = read_table_csv("tmp_table.csv");
  CHECK(same_table(table, loaded));
  CHECK(loaded.rows[1].scenario == "odd \"label\", with quote");

  write_table(table, "tmp_table.md", "markdown");
  std::ifstream md("tmp_table.md");
  std::string line;
  int lines = 0;
  bool has_dashes = false;
  while (std::getline(md, line)) {
    ++lines;
    if (line.find("--") != std::string::npos) has_dashes = true;
  }
  CHECK(lines == 2 + static_cast<int>(table.rows.size()));
  CHECK(has_dashes);

  CHECK_THROWS_AS(write_table(table, "tmp_table.csv", "tsv"), std::invalid_argument);
  std::remove("tmp_table.csv");
  std::remove("tmp_table.md");
}

TEST_CASE("empty table writes a bare header that reads back empty") {
  write_table(ResultTable{}, "tmp_empty.csv", "csv");
  const auto loaded = read_table_csv("tmp_empty.csv");
  CHECK(loaded.rows.empty());
  std::remove("tmp_empty.csv");
}

TEST_CASE("result csv reader rejects malformed files") {
  write_file("tmp_bad.csv", "scenario,method\n");
  CHECK_THROWS_AS(read_table_csv("tmp_bad.csv"), ParseError);
  write_file("tmp_bad.csv", "");
  CHECK_THROWS_AS(read_table_csv("tmp_bad.csv"), ParseError);
  CHECK_THROWS_AS(read_table_csv("no_such_file.csv"), ParseError);
  std::remove("tmp_bad.csv");
}

TEST_CASE("analysis csv reader finds y and z and treats the rest as covariates") {
  write_file("tmp_an.csv", "region,y,z,pm25\n1,2.5,0.3,11\n2,1.5,0.7,9\n3,0.5,0.1,14\n");
  const auto data = read_analysis_csv("tmp_an.csv");
  REQUIRE(data.covariate_names.size() == 2);
  CHECK(data.covariate_names[0] == "region");
  CHECK(data.covariate_names[1] == "pm25");
  CHECK(data.y.size() == 3);
  CHECK(data.y(1) == 1.5);
  CHECK(data.z(2) == 0.1);
  CHECK(data.c(0, 1) == 11.0);

  write_file("tmp_an.csv", "outcome,z\n1,2\n");
  CHECK_THROWS_WITH_AS(read_analysis_csv("tmp_an.csv"),
                       doctest::Contains("\"y\""), ParseError);
  write_file("tmp_an.csv", "y,exposure\n1,2\n");
  CHECK_THROWS_WITH_AS(read_analysis_csv("tmp_an.csv"),
                       doctest::Contains("\"z\""), ParseError);
  write_file("tmp_an.csv", "y,z\n1,2\n3\n");
  CHECK_THROWS_AS(read_analysis_csv("tmp_an.csv"), ParseError);
  write_file("tmp_an.csv", "y,z\n1,abc\n");
  CHECK_THROWS_AS(read_analysis_csv("tmp_an.csv"), ParseError);
  write_file("tmp_an.csv", "y,z\n");
  CHECK_THROWS_AS(read_analysis_csv("tmp_an.csv"), ParseError);
  std::remove("tmp_an.csv");
}

TEST_CASE("analysis drops isolated units and reports them one-based") {
  // Unit 3 has no edges; the rest form a path. Outcomes are exactly
  // y = 2 z + 3 zbar so the neighborhood fit recovers both coefficients.
  std::ostringstream data;
  data << "y,z\n";
  const int n = 14;
  std::vector<double> z(n);
  for (int i = 0; i < n; ++i) z[i] = 0.1 * (i + 1) * ((i % 3) + 1);
  std::vector<std::vector<int>> nb(n);
  for (int i = 0; i < n - 1; ++i) {
    if (i == 2 || i + 1 == 2) continue;
    const int a = i == 1 ? 1 : i;  // skip over the isolated unit
    const int b = i + 1 == 2 ? 3 : i + 1;
    nb[a].push_back(b);
    nb[b].push_back(a);
  }
  std::ostringstream edges;
  edges << "# edge list, 1-based indices\n";
  for (int i = 0; i < n; ++i)
    for (int j : nb[i])
      if (j > i) edges << (i + 1) << ' ' << (j + 1) << "\n";
  // zbar over the connected path, for constructing the outcome.
  AdjacencyStructure adj(n, nb);
  Eigen::VectorXd zv(n);
  for (int i = 0; i < n; ++i) zv(i) = z[i];
  for (int i = 0; i < n; ++i) {
    double zbar_i = 0.0;
    if (!adj.neighbors()[i].empty()) {
      for (int j : adj.neighbors()[i]) zbar_i += zv(j);
      zbar_i /= static_cast<double>(adj.neighbors()[i].size());
    }
    data << (2.0 * zv(i) + 3.0 * zbar_i) << ',' << zv(i) << "\n";
  }
  write_file("tmp_an.csv", data.str());
  write_file("tmp_an_edges.txt", edges.str());

  AnalyzeOptions opt;
  opt.run_bayes = false;
  opt.exposure_degree = 1;
  const auto report = analyze_csv("tmp_an.csv", "tmp_an_edges.txt", opt);
  CHECK(report.n_total == 14);
  CHECK(report.n_kept == 13);
  REQUIRE(report.dropped_units.size() == 1);
  CHECK(report.dropped_units[0] == 3);
  REQUIRE(report.rows.size() == 2);
  CHECK(report.rows[0].method == "OLS local exposure");
  CHECK(report.rows[1].method == "OLS local and neighborhood exposure");
  CHECK(report.rows[1].local == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(report.rows[1].interference == doctest::Approx(3.0).epsilon(1e-9));
  std::remove("tmp_an.csv");
  std::remove("tmp_an_edges.txt");
}

TEST_CASE("synthetic stand-in is connected and deterministic") {
  const auto bundle = synthetic_standin(80, 5);
  CHECK(bundle.data.n() == 80);
  CHECK(bundle.first_degree.n() == 80);
  for (int i = 0; i < 80; ++i) {
    CHECK(!bundle.first_degree.neighbors()[i].empty());
    CHECK(bundle.data.adjacency.degree(i) >=
          bundle.first_degree.degree(i));  // second-degree closure only adds
  }
  CHECK(bundle.data.p() == 4);
  CHECK(bundle.data.u.has_value());

  const auto again = synthetic_standin(80, 5);
  CHECK(again.data.y == bundle.data.y);
  const auto other = synthetic_standin(80, 6);
  CHECK(other.data.y != bundle.data.y);

  CHECK_THROWS_AS(synthetic_standin(5, 1), std::invalid_argument);
}

TEST_CASE("stand-in files feed the full analysis pipeline") {
  const auto bundle = synthetic_standin(110, 9);
  write_standin_files(bundle, "tmp_standin.csv", "tmp_standin_edges.txt");

  // The written exposure is on the positive raw scale.
  const auto raw = read_analysis_csv("tmp_standin.csv");
  CHECK(raw.z.minCoeff() > 0.0);
  REQUIRE(raw.covariate_names.size() == 4);
  CHECK(raw.covariate_names[2] == "c3");

  AnalyzeOptions opt;
  opt.log_exposure = true;
  opt.exposure_degree = 2;
  opt.seed = 11;
  opt.n_iter = 500;
  opt.n_burnin = 200;
  opt.thin = 5;
  opt.n_chains = 2;
  const auto report = analyze_csv("tmp_standin.csv", "tmp_standin_edges.txt", opt);
  CHECK(report.n_total == 110);
  CHECK(report.n_kept == 110);
  REQUIRE(report.rows.size() == 4);
  CHECK(report.rows[0].method == "OLS local exposure");
  CHECK_FALSE(report.rows[0].has_interference);
  CHECK(report.rows[1].has_interference);
  CHECK(report.rows[2].method == "Spatial model first degree");
  CHECK(report.rows[3].method == "Spatial model second degree");
  for (const auto& row : report.rows) {
    CHECK(std::isfinite(row.local));
    CHECK(row.local_lower < row.local_upper);
  }
  for (int i : {2, 3}) {
    CHECK(report.rows[i].bayesian);
    CHECK(std::isfinite(report.rows[i].rhat_local));
  }

  // The written neighborhood model matches the generating one, so the OLS
  // neighborhood fit sees the exposure scale the outcomes were built on.
  // Recovery is rough at this size, but the estimate must be in range.
  CHECK(std::fabs(report.rows[1].local - 1.0) < 1.5);

  write_analysis(report, "tmp_report.csv", "csv");
  std::ifstream check("tmp_report.csv");
  std::string header;
  std::getline(check, header);
  CHECK(header ==
        "method,local,local_lower,local_upper,interference,interference_lower,"
        "interference_upper,converged,rhat_local,rhat_interference");
  int data_lines = 0;
  std::string line;
  while (std::getline(check, line))
    if (!line.empty()) ++data_lines;
  CHECK(data_lines == 4);

  write_analysis(report, "tmp_report.md", "markdown");
  std::ifstream md("tmp_report.md");
  int md_lines = 0;
  while (std::getline(md, line)) ++md_lines;
  CHECK(md_lines == 6);

  std::remove("tmp_standin.csv");
  std::remove("tmp_standin_edges.txt");
  std::remove("tmp_report.csv");
  std::remove("tmp_report.md");
}

TEST_CASE("analysis can restrict the model fits to one adjacency degree") {
  const auto bundle = synthetic_standin(90, 13);
  write_standin_files(bundle, "tmp_standin.csv", "tmp_standin_edges.txt");
  AnalyzeOptions opt;
  opt.log_exposure = true;
  opt.seed = 3;
  opt.n_iter = 300;
  opt.n_burnin = 120;
  opt.thin = 4;
  opt.n_chains = 1;  // no gate possible with a single chain
  opt.gh_degree = 1;
  const auto report = analyze_csv("tmp_standin.csv", "tmp_standin_edges.txt", opt);
  REQUIRE(report.rows.size() == 3);
  CHECK(report.rows[2].method == "Spatial model first degree");
  CHECK(std::isnan(report.rows[2].rhat_local));

  AnalyzeOptions bad = opt;
  bad.gh_degree = 3;
  CHECK_THROWS_AS(analyze_csv("tmp_standin.csv", "tmp_standin_edges.txt", bad),
                  std::invalid_argument);
  bad = opt;
  bad.exposure_degree = 0;
  CHECK_THROWS_AS(analyze_csv("tmp_standin.csv", "tmp_standin_edges.txt", bad),
                  std::invalid_argument);
  bad = opt;
  bad.log_exposure = false;
  bad.covariate_columns = {"c9"};
  CHECK_THROWS_AS(analyze_csv("tmp_standin.csv", "tmp_standin_edges.txt", bad), ParseError);
  std::remove("tmp_standin.csv");
  std::remove("tmp_standin_edges.txt");
}

TEST_CASE("induced subgraph keeps edges among kept units and reindexes") {
  const auto line = line_adjacency(5);
  const auto sub = induced_subgraph(line, {0, 2, 3});
  CHECK(sub.n() == 3);
  CHECK(sub.neighbors()[0].empty());  // old unit 0 lost its only neighbor
  CHECK(sub.has_edge(1, 2));          // old 2-3 edge survives
  CHECK_FALSE(sub.has_edge(0, 1));

  CHECK_THROWS_AS(induced_subgraph(line, {}), std::invalid_argument);
  CHECK_THROWS_AS(induced_subgraph(line, {0, 5}), std::invalid_argument);
  CHECK_THROWS_AS(induced_subgraph(line, {2, 1}), std::invalid_argument);
  CHECK_THROWS_AS(induced_subgraph(line, {1, 1}), std::invalid_argument);
}
