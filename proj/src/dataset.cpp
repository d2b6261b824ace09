#include "spcausal/dataset.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "spcausal/errors.hpp"

namespace spcausal {

namespace {

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s, const std::string& where) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw ParseError(where + ": not a number: \"" + s + "\"");
  return v;
}

}  // namespace

void write_dataset_csv(const Dataset& data, const std::string& data_path,
                       const std::string& edges_path) {
  std::ofstream out(data_path);
  if (!out) throw ParseError("cannot open for writing: " + data_path);
  out << "y,z,zbar";
  for (int j = 0; j < data.p(); ++j) out << ",c" << (j + 1);
  if (data.u) out << ",u,ubar";
  out << "\n";
  for (int i = 0; i < data.n(); ++i) {
    out << format_value(data.y(i)) << ',' << format_value(data.z(i)) << ','
        << format_value(data.zbar(i));
    for (int j = 0; j < data.p(); ++j) out << ',' << format_value(data.c(i, j));
    if (data.u) out << ',' << format_value((*data.u)(i)) << ',' << format_value((*data.ubar)(i));
    out << "\n";
  }

  std::ofstream eout(edges_path);
  if (!eout) throw ParseError("cannot open for writing: " + edges_path);
  eout << "# edge list, 1-based indices\n";
  for (int i = 0; i < data.n(); ++i)
    for (int j : data.adjacency.neighbors()[i])
      if (j > i) eout << (i + 1) << ' ' << (j + 1) << "\n";
}

Dataset read_dataset_csv(const std::string& data_path, const std::string& edges_path) {
  std::ifstream in(data_path);
  if (!in) throw ParseError("cannot open: " + data_path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError(data_path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_csv_line(line);
  if (header.size() < 3 || header[0] != "y" || header[1] != "z" || header[2] != "zbar")
    throw ParseError(data_path + ": header must start with y,z,zbar");
  int p = 0;
  std::size_t col = 3;
  while (col < header.size() && header[col] == "c" + std::to_string(p + 1)) {
    ++p;
    ++col;
  }
  bool has_latent = false;
  if (col < header.size()) {
    if (col + 2 == header.size() && header[col] == "u" && header[col + 1] == "ubar")
      has_latent = true;
    else
      throw ParseError(data_path + ": unrecognized trailing columns in header");
  }

  std::vector<std::vector<double>> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size())
      throw ParseError(data_path + ":" + std::to_string(lineno) + ": wrong field count");
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields)
      row.push_back(parse_double(f, data_path + ":" + std::to_string(lineno)));
    rows.push_back(std::move(row));
  }
  const int n = static_cast<int>(rows.size());
  if (n == 0) throw ParseError(data_path + ": no data rows");

  Dataset data(read_edge_list(edges_path, n));
  data.y.resize(n);
  data.z.resize(n);
  data.zbar.resize(n);
  data.c.resize(n, p);
  if (has_latent) {
    data.u = Eigen::VectorXd(n);
    data.ubar = Eigen::VectorXd(n);
  }
  for (int i = 0; i < n; ++i) {
    data.y(i) = rows[i][0];
    data.z(i) = rows[i][1];
    data.zbar(i) = rows[i][2];
    for (int j = 0; j < p; ++j) data.c(i, j) = rows[i][3 + j];
    if (has_latent) {
      (*data.u)(i) = rows[i][3 + p];
      (*data.ubar)(i) = rows[i][4 + p];
    }
  }
  return data;
}

}  // namespace spcausal
