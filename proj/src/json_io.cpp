#include "vorlat/json_io.hpp"

#include <fstream>

#include "vorlat/errors.hpp"

namespace vorlat {

namespace {

json vec_to_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json vec_to_json(const Eigen::VectorXi& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

}  // namespace

json to_json(const Basis& basis) {
  json cols = json::array();
  for (int c = 0; c < basis.dim(); ++c) {
    json col = json::array();
    for (int r = 0; r < basis.dim(); ++r) col.push_back(basis.matrix()(r, c));
    cols.push_back(std::move(col));
  }
  return json{{"dim", basis.dim()}, {"columns", std::move(cols)}};
}

Basis basis_from_json(const json& j) {
  if (!j.is_object() || !j.contains("columns") || !j["columns"].is_array())
    throw InputError("basis json must be an object with a \"columns\" array");
  const json& cols = j["columns"];
  const std::size_t n = cols.size();
  if (n == 0) throw InputError("basis json: empty column list");
  Eigen::MatrixXd m(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    if (!cols[c].is_array() || cols[c].size() != n)
      throw InputError("basis json: column " + std::to_string(c) + " must be an array of " +
                       std::to_string(n) + " numbers");
    for (std::size_t r = 0; r < n; ++r) {
      if (!cols[c][r].is_number())
        throw InputError("basis json: column " + std::to_string(c) + " entry " +
                         std::to_string(r) + " is not a number");
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = cols[c][r].get<double>();
    }
  }
  if (j.contains("dim") && j["dim"].get<std::size_t>() != n)
    throw InputError("basis json: \"dim\" does not match the column count");
  return Basis::from_columns(m);
}

json to_json(const LatticeVector& v) {
  return json{{"coeffs", vec_to_json(v.coeffs)}, {"coords", vec_to_json(v.coords)}};
}

json to_json(const RelevantReport& report) {
  json results = json::array();
  for (const auto& e : report.results) {
    json entry{{"coeffs", vec_to_json(e.v.coeffs)},
               {"coords", vec_to_json(e.v.coords)},
               {"status", status_name(e.status)},
               {"margin", e.margin}};
    if (e.has_witness) entry["witness"] = vec_to_json(e.witness);
    results.push_back(std::move(entry));
  }
  return json{{"norm", report.norm.str()},
              {"lambda1", report.lambda1},
              {"mu_upper", report.mu_upper},
              {"candidate_radius", report.candidate_radius},
              {"counts",
               {{"relevant", report.counts.relevant},
                {"weak_only", report.counts.weak_only},
                {"not_relevant", report.counts.not_relevant},
                {"undecided", report.counts.undecided}}},
              {"results", std::move(results)}};
}

json to_json(const TheoremReport& report) {
  json records = json::array();
  for (const auto& r : report.records) {
    json checks = json::array();
    for (const auto& c : r.checks)
      checks.push_back(json{{"name", c.name},
                            {"lhs", c.lhs},
                            {"rhs", c.rhs},
                            {"margin", c.margin},
                            {"threshold", c.threshold},
                            {"pass", c.pass}});
    records.push_back(
        json{{"k", r.k}, {"kind", r.kind}, {"pass", r.pass}, {"checks", std::move(checks)}});
  }
  return json{{"m", report.m},
              {"M", report.M},
              {"mode", numeric_mode_name(report.mode)},
              {"window", report.window},
              {"expected_count", report.expected_count},
              {"certified_k", report.certified_k},
              {"pass", report.pass},
              {"records", std::move(records)}};
}

json to_json(const Cell2D& cell, const std::vector<Facet2D>& facets) {
  json samples = json::array();
  for (const auto& s : cell.samples) {
    json ties = json::array();
    for (int t : s.ties)
      ties.push_back(vec_to_json(cell.generators[static_cast<std::size_t>(t)].coeffs));
    samples.push_back(json{{"theta", s.theta},
                           {"radius", s.radius},
                           {"point", json::array({s.point.x(), s.point.y()})},
                           {"ties", std::move(ties)}});
  }
  json jfacets = json::array();
  for (const auto& f : facets)
    jfacets.push_back(
        json{{"generator",
              vec_to_json(cell.generators[static_cast<std::size_t>(f.generator)].coeffs)},
             {"first", f.first},
             {"len", f.len}});
  return json{{"norm", cell.norm.str()},
              {"mu_upper", cell.mu_upper},
              {"tie_tol", cell.tie_tol},
              {"angles", cell.samples.size()},
              {"facets", std::move(jfacets)},
              {"samples", std::move(samples)}};
}

json to_json(const L1FamilyReport& report) {
  json vectors = json::array();
  for (const auto& v : report.vectors)
    vectors.push_back(json{{"coeffs", json::array({v.coeffs[0], v.coeffs[1]})},
                           {"coords", json::array({v.coords[0], v.coords[1]})}});
  return json{{"m", report.m},
              {"expected_count", report.expected_count},
              {"count", report.vectors.size()},
              {"hole", json::array({report.hole.x(), report.hole.y()})},
              {"vectors", std::move(vectors)}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("invalid json in " + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw IoError("failed writing " + path);
}

void write_json_file(const std::string& path, const json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

}  // namespace vorlat
