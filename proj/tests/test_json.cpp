// Tests for JSON serialization: basis round trips, malformed-input
// rejection, report shapes, file IO, and dump determinism.
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <string>

#include "vorlat/errors.hpp"
#include "vorlat/json_io.hpp"
#include "vorlat/lm_family.hpp"
#include "vorlat/planar.hpp"
#include "vorlat/relevant.hpp"

using namespace vorlat;

namespace {

Basis sample_basis() {
  Eigen::Matrix2d m;
  m << 1, 0, 1, 3;
  return Basis::from_columns(m);
}

}  // namespace

TEST_CASE("json: basis round trip preserves the matrix exactly") {
  const Basis b = sample_basis();
  const json j = to_json(b);
  CHECK(j.at("dim") == 2);
  CHECK(j.at("columns").size() == 2);
  const Basis back = basis_from_json(j);
  CHECK((back.matrix() - b.matrix()).norm() == 0.0);
}

TEST_CASE("json: malformed basis documents are rejected") {
  CHECK_THROWS_AS(basis_from_json(json::parse(R"({"dim": 2})")), InputError);
  CHECK_THROWS_AS(basis_from_json(json::parse(R"({"columns": []})")), InputError);
  CHECK_THROWS_AS(basis_from_json(json::parse(R"({"columns": [[1,0],[1]]})")),
                  InputError);
  CHECK_THROWS_AS(basis_from_json(json::parse(R"({"columns": [[1,"x"],[0,1]]})")),
                  InputError);
  CHECK_THROWS_AS(
      basis_from_json(json::parse(R"({"dim": 3, "columns": [[1,0],[0,1]]})")),
      InputError);
  CHECK_THROWS_AS(basis_from_json(json::parse(R"([1, 2, 3])")), InputError);
  // Singular columns fail basis validation, not JSON parsing.
  CHECK_THROWS_AS(basis_from_json(json::parse(R"({"columns": [[1,2],[2,4]]})")),
                  SingularBasis);
}

TEST_CASE("json: relevant report carries counts and status strings") {
  const Basis b = sample_basis();
  const RelevantReport rep = enumerate_relevant(b, NormSpec::parse("l2"));
  const json j = to_json(rep);
  CHECK(j.at("norm") == "l2");
  CHECK(j.at("counts").at("relevant") == 6);
  CHECK(j.at("counts").contains("weak_only"));
  CHECK(j.at("counts").contains("undecided"));
  CHECK(j.at("lambda1").is_number());
  CHECK(j.at("mu_upper").is_number());
  REQUIRE(j.at("results").is_array());
  bool saw_relevant = false;
  for (const auto& r : j.at("results")) {
    CHECK(r.contains("coeffs"));
    CHECK(r.contains("coords"));
    CHECK(r.contains("status"));
    CHECK(r.contains("margin"));
    if (r.at("status") == "Relevant") {
      saw_relevant = true;
      CHECK(r.contains("witness"));
    }
  }
  CHECK(saw_relevant);
}

TEST_CASE("json: theorem and family reports expose their verdicts") {
  const json t = to_json(verify_theorem_main(4));
  CHECK(t.at("m") == 4);
  CHECK(t.at("mode") == "binary64");
  CHECK(t.at("pass") == true);
  CHECK(t.at("expected_count") == 1);
  CHECK(t.at("certified_k").size() == 1);
  REQUIRE(t.at("records").is_array());
  for (const auto& rec : t.at("records")) {
    CHECK(rec.contains("kind"));
    CHECK(rec.at("pass") == true);
    for (const auto& c : rec.at("checks")) {
      CHECK(c.contains("name"));
      CHECK(c.contains("lhs"));
      CHECK(c.contains("rhs"));
      CHECK(c.contains("margin"));
      CHECK(c.contains("threshold"));
      CHECK(c.at("pass") == true);
    }
  }

  const json f = to_json(l1_family_weak_relevant(5));
  CHECK(f.at("m") == 5);
  CHECK(f.at("expected_count") == 10);
  CHECK(f.at("count") == 10);
  CHECK(f.at("vectors").size() == 10);
  CHECK(f.at("hole")[1] == 2.5);

  const Cell2D cell = trace_cell2d(sample_basis(), NormSpec::parse("l2"), 360);
  const json c = to_json(cell, extract_facets(cell));
  CHECK(c.at("norm") == "l2");
  CHECK(c.at("angles") == 360);
  CHECK(c.at("facets").size() == 6);
  CHECK(c.at("samples").size() == 360);
  CHECK(c.at("samples")[0].contains("theta"));
  CHECK(c.at("samples")[0].contains("radius"));
  CHECK(c.at("samples")[0].contains("ties"));
}

TEST_CASE("json: file IO round trip and error paths") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "vorlat_json_test";
  fs::create_directories(dir);
  const std::string path = (dir / "basis.json").string();

  const Basis b = sample_basis();
  write_json_file(path, to_json(b));
  const json back = read_json_file(path);
  CHECK((basis_from_json(back).matrix() - b.matrix()).norm() == 0.0);

  CHECK_THROWS_AS(read_json_file((dir / "missing.json").string()), IoError);
  write_text_file((dir / "broken.json").string(), "{ not json");
  CHECK_THROWS_AS(read_json_file((dir / "broken.json").string()), InputError);

  fs::remove_all(dir);
}

TEST_CASE("json: dumps are deterministic") {
  const Basis b = sample_basis();
  const RelevantReport r1 = enumerate_relevant(b, NormSpec::parse("l3"));
  const RelevantReport r2 = enumerate_relevant(b, NormSpec::parse("l3"));
  CHECK(to_json(r1).dump(2) == to_json(r2).dump(2));
  CHECK(to_json(verify_theorem_main(9)).dump() ==
        to_json(verify_theorem_main(9)).dump());
}
