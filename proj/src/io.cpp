#include "distspace/io.hpp"

#include "distspace/errors.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace distspace::io {

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object()) throw ParseError("expected a JSON object holding key \"" + std::string(key) + "\"");
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError("missing key \"" + std::string(key) + "\"");
  return *it;
}

double as_number(const Json& v, const std::string& key) {
  if (!v.is_number()) throw ParseError("key \"" + key + "\" must be a number");
  return v.get<double>();
}

int as_int(const Json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ParseError("key \"" + key + "\" must be an integer");
  return v.get<int>();
}

std::vector<double> as_numbers(const Json& v, const std::string& key) {
  if (!v.is_array()) throw ParseError("key \"" + key + "\" must be an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(as_number(v[i], key + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Eigen::MatrixXd as_matrix(const Json& v, const std::string& key) {
  if (!v.is_array()) throw ParseError("key \"" + key + "\" must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(v.size());
  Eigen::MatrixXd m;
  for (Eigen::Index r = 0; r < rows; ++r) {
    const std::string row_key = key + "[" + std::to_string(r) + "]";
    const auto row = as_numbers(v[static_cast<std::size_t>(r)], row_key);
    if (r == 0) m.resize(rows, static_cast<Eigen::Index>(row.size()));
    if (static_cast<Eigen::Index>(row.size()) != m.cols()) {
      throw ParseError("key \"" + row_key + "\" has " + std::to_string(row.size()) +
                       " entries, expected " + std::to_string(m.cols()));
    }
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = row[static_cast<std::size_t>(c)];
  }
  return m;
}

Json matrix_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string pair_key(int i, int j) { return std::to_string(i) + "," + std::to_string(j); }

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    rows.push_back(std::move(fields));
  }
  return rows;
}

bool is_number_text(const std::string& s) {
  if (s.empty()) return false;
  char* end = nullptr;
  std::strtod(s.c_str(), &end);
  return end != s.c_str() && std::string(end).find_first_not_of(" \t") == std::string::npos;
}

double parse_number(const std::string& s, std::size_t line) {
  if (!is_number_text(s)) {
    throw ParseError("line " + std::to_string(line) + ": \"" + s + "\" is not a number");
  }
  return std::strtod(s.c_str(), nullptr);
}

bool has_csv_extension(const std::string& path) {
  return std::filesystem::path(path).extension() == ".csv";
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  const std::filesystem::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write file " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(source + ": malformed JSON: " + e.what());
  }
}

Json to_json(const PointConfiguration& config) {
  Json j;
  j["dimension"] = config.dimension();
  j["points"] = matrix_json(config.points());
  return j;
}

PointConfiguration configuration_from_json(const Json& j) {
  const int d = as_int(require(j, "dimension"), "dimension");
  const Eigen::MatrixXd pts = as_matrix(require(j, "points"), "points");
  if (pts.rows() > 0 && pts.cols() != d) {
    throw ParseError("key \"points\" rows have " + std::to_string(pts.cols()) +
                     " coordinates, but \"dimension\" is " + std::to_string(d));
  }
  try {
    return PointConfiguration(d, pts);
  } catch (const ShapeError& e) {
    throw ParseError(std::string("key \"points\": ") + e.what());
  }
}

Json to_json(const DistanceAssignment& dists) {
  Json j;
  j["n"] = dists.size();
  Json pairs = Json::object();
  for (int i = 0; i < dists.size(); ++i) {
    for (int k = i + 1; k < dists.size(); ++k) pairs[pair_key(i, k)] = dists(i, k);
  }
  j["distances"] = std::move(pairs);
  return j;
}

DistanceAssignment assignment_from_json(const Json& j, Boundary coincident) {
  Eigen::MatrixXd m;
  if (j.is_object() && j.contains("matrix")) {
    m = as_matrix(j["matrix"], "matrix");
  } else {
    const int n = as_int(require(j, "n"), "n");
    if (n < 1) throw ParseError("key \"n\" must be positive");
    const Json& pairs = require(j, "distances");
    if (!pairs.is_object()) throw ParseError("key \"distances\" must map \"i,j\" to numbers");
    m = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXi seen = Eigen::MatrixXi::Zero(n, n);
    for (const auto& [key, value] : pairs.items()) {
      int a = -1, b = -1;
      char extra = 0;
      if (std::sscanf(key.c_str(), "%d,%d%c", &a, &b, &extra) != 2 || a < 0 || b < 0 ||
          a >= n || b >= n || a == b) {
        throw ParseError("key \"distances." + key + "\" is not a valid pair \"i,j\" with 0 <= i,j < n");
      }
      if (seen(a, b)) throw ParseError("key \"distances." + key + "\" repeats a pair");
      seen(a, b) = seen(b, a) = 1;
      m(a, b) = m(b, a) = as_number(value, "distances." + key);
    }
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        if (!seen(a, b)) throw ParseError("key \"distances\" lacks pair \"" + pair_key(a, b) + "\"");
      }
    }
  }
  try {
    return DistanceAssignment(m, coincident);
  } catch (const ShapeError& e) {
    throw ParseError(std::string("distance input: ") + e.what());
  }
}

Json to_json(const DistanceMultiset& multiset) {
  Json j;
  j["values"] = multiset.values();
  return j;
}

DistanceMultiset multiset_from_json(const Json& j) {
  std::vector<double> values;
  if (j.is_array()) {
    values = as_numbers(j, "values");
  } else if (j.is_object() && j.contains("multiset")) {
    values = as_numbers(j["multiset"], "multiset");
  } else {
    values = as_numbers(require(j, "values"), "values");
  }
  try {
    return DistanceMultiset(values);
  } catch (const ShapeError& e) {
    throw ParseError(std::string("key \"values\": ") + e.what());
  }
}

Json to_json(const FeasibilityReport& report) {
  Json j;
  j["realizable"] = report.realizable;
  j["dimension"] = report.dimension;
  if (report.failed_condition) {
    Json f;
    f["kind"] = to_string(report.failed_condition->kind);
    f["index"] = report.failed_condition->index;
    f["value"] = report.failed_condition->value;
    j["failed_condition"] = std::move(f);
  } else {
    j["failed_condition"] = nullptr;
  }
  Json simplices = Json::array();
  for (const auto& s : report.simplex_residuals) {
    Json e;
    e["point"] = s.point;
    e["simplex_dim"] = s.simplex_dim;
    e["squared_volume"] = s.squared_volume;
    simplices.push_back(std::move(e));
  }
  j["simplex_residuals"] = std::move(simplices);
  j["gram_eigenvalues"] = report.gram_eigenvalues;
  if (report.max_minor) {
    j["max_minor"] = *report.max_minor;
  } else {
    j["max_minor"] = nullptr;
  }
  j["tolerance"] = report.tolerance_used;
  j["scale"] = report.scale;
  return j;
}

Json to_json(const DegeneracyClassSet& classes) {
  Json j;
  j["multiset"] = classes.multiset.values();
  j["dimension"] = classes.dimension;
  j["order"] = classes.order();
  j["complete"] = classes.complete;
  j["explored_fraction"] = classes.explored_fraction;
  j["evaluations"] = classes.evaluations;
  Json list = Json::array();
  for (const auto& c : classes.classes) list.push_back(to_json(c));
  j["classes"] = std::move(list);
  return j;
}

Json to_json(const CircuitReport& report) {
  auto circuit = [](const Circuit& c) {
    Json e;
    e["order"] = c.order;
    e["length"] = c.length;
    return e;
  };
  Json j;
  Json list = Json::array();
  for (const auto& c : report.circuits) list.push_back(circuit(c));
  j["circuits"] = std::move(list);
  j["circuit_count"] = report.circuit_count;
  j["distinct"] = report.distinct_length_count();
  j["distinct_lengths"] = report.distinct_lengths;
  j["length_tol"] = report.length_tol;
  j["shortest"] = circuit(report.shortest);
  return j;
}

Json to_json(const LatticeBasis& basis) {
  Json j;
  j["dimension"] = basis.dimension();
  j["vectors"] = matrix_json(basis.vectors());
  return j;
}

LatticeBasis basis_from_json(const Json& j) {
  const int d = as_int(require(j, "dimension"), "dimension");
  const Eigen::MatrixXd v = as_matrix(require(j, "vectors"), "vectors");
  if (v.rows() != d || v.cols() != d) {
    throw ParseError("key \"vectors\" must hold " + std::to_string(d) + " vectors of length " +
                     std::to_string(d));
  }
  try {
    return LatticeBasis(v);
  } catch (const Error& e) {
    throw ParseError(std::string("key \"vectors\": ") + e.what());
  }
}

Json to_json(const LatticeSpectrum& spectrum) {
  Json j;
  j["cutoff"] = spectrum.cutoff;
  j["distances"] = spectrum.distances;
  j["multiplicities"] = spectrum.multiplicities;
  return j;
}

std::string distances_csv(const DistanceAssignment& dists) {
  std::ostringstream out;
  out << "i,j,distance\n";
  for (int i = 0; i < dists.size(); ++i) {
    for (int k = i + 1; k < dists.size(); ++k) {
      out << i << ',' << k << ',' << format_number(dists(i, k)) << '\n';
    }
  }
  return out.str();
}

DistanceAssignment assignment_from_csv(const std::string& text, Boundary coincident) {
  auto rows = csv_rows(text);
  std::size_t first = 0;
  if (!rows.empty() && !rows[0].empty() && !is_number_text(rows[0][0])) first = 1;
  std::vector<std::tuple<int, int, double>> entries;
  int n = 0;
  for (std::size_t r = first; r < rows.size(); ++r) {
    if (rows[r].size() != 3) {
      throw ParseError("line " + std::to_string(r + 1) + ": expected i,j,distance");
    }
    const double i = parse_number(rows[r][0], r + 1);
    const double k = parse_number(rows[r][1], r + 1);
    const double v = parse_number(rows[r][2], r + 1);
    if (i < 0 || k < 0 || i != std::floor(i) || k != std::floor(k) || i == k) {
      throw ParseError("line " + std::to_string(r + 1) + ": invalid pair indices");
    }
    entries.emplace_back(static_cast<int>(i), static_cast<int>(k), v);
    n = std::max({n, static_cast<int>(i) + 1, static_cast<int>(k) + 1});
  }
  if (entries.size() != static_cast<std::size_t>(pair_count(n))) {
    throw ParseError("expected " + std::to_string(pair_count(n)) + " pair rows for " +
                     std::to_string(n) + " points, found " + std::to_string(entries.size()));
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXi seen = Eigen::MatrixXi::Zero(n, n);
  for (const auto& [i, k, v] : entries) {
    if (seen(i, k)) throw ParseError("pair " + pair_key(i, k) + " repeats");
    seen(i, k) = seen(k, i) = 1;
    m(i, k) = m(k, i) = v;
  }
  try {
    return DistanceAssignment(m, coincident);
  } catch (const ShapeError& e) {
    throw ParseError(std::string("distance input: ") + e.what());
  }
}

DistanceMultiset multiset_from_csv(const std::string& text) {
  auto rows = csv_rows(text);
  std::size_t first = 0;
  if (!rows.empty() && !rows[0].empty() && !is_number_text(rows[0][0])) first = 1;
  std::vector<double> values;
  for (std::size_t r = first; r < rows.size(); ++r) {
    values.push_back(parse_number(rows[r].empty() ? std::string() : rows[r][0], r + 1));
  }
  try {
    return DistanceMultiset(values);
  } catch (const ShapeError& e) {
    throw ParseError(std::string("multiset input: ") + e.what());
  }
}

std::string spectrum_csv(const LatticeSpectrum& spectrum) {
  std::ostringstream out;
  out << "distance,multiplicity\n";
  for (std::size_t i = 0; i < spectrum.distances.size(); ++i) {
    out << format_number(spectrum.distances[i]) << ',' << spectrum.multiplicities[i] << '\n';
  }
  return out.str();
}

LatticeSpectrum spectrum_from_csv(const std::string& text, double cutoff) {
  auto rows = csv_rows(text);
  std::size_t first = 0;
  if (!rows.empty() && !rows[0].empty() && !is_number_text(rows[0][0])) first = 1;
  LatticeSpectrum s;
  s.cutoff = cutoff;
  for (std::size_t r = first; r < rows.size(); ++r) {
    if (rows[r].size() != 2) {
      throw ParseError("line " + std::to_string(r + 1) + ": expected distance,multiplicity");
    }
    s.distances.push_back(parse_number(rows[r][0], r + 1));
    s.multiplicities.push_back(static_cast<long>(parse_number(rows[r][1], r + 1)));
  }
  return s;
}

std::string coordinates_csv(
    const std::vector<std::pair<std::string, PointConfiguration>>& configs) {
  int d = 0;
  for (const auto& [name, c] : configs) d = std::max(d, c.dimension());
  std::ostringstream out;
  out << "config,point";
  for (int k = 0; k < d; ++k) out << ",x" << k;
  out << '\n';
  for (const auto& [name, c] : configs) {
    for (int i = 0; i < c.size(); ++i) {
      out << name << ',' << i;
      for (int k = 0; k < d; ++k) {
        out << ',' << format_number(k < c.dimension() ? c.points()(i, k) : 0.0);
      }
      out << '\n';
    }
  }
  return out.str();
}

DistanceAssignment load_assignment(const std::string& path, Boundary coincident) {
  const std::string text = read_file(path);
  if (has_csv_extension(path)) return assignment_from_csv(text, coincident);
  return assignment_from_json(parse_json(text, path), coincident);
}

DistanceMultiset load_multiset(const std::string& path) {
  const std::string text = read_file(path);
  if (has_csv_extension(path)) return multiset_from_csv(text);
  return multiset_from_json(parse_json(text, path));
}

PointConfiguration load_configuration(const std::string& path) {
  return configuration_from_json(parse_json(read_file(path), path));
}

}  // namespace distspace::io
