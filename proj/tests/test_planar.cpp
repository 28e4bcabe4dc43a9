// Tests for 2D cell tracing, facet extraction, the 4-or-6 facet check, the
// l1 family census, and SVG rendering.
#include "doctest.h"

#include <cmath>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "vorlat/errors.hpp"
#include "vorlat/planar.hpp"

using namespace vorlat;

namespace {

Basis z2_basis() {
  Eigen::Matrix2d m;
  m << 1, 0, 0, 1;
  return Basis::from_columns(m);
}

// Lattice spanned by (1, 1) and (0, 3): hexagonal cell under l2, and the
// m = 3 member of the l1 family.
Basis skew_basis() {
  Eigen::Matrix2d m;
  m << 1, 0, 1, 3;
  return Basis::from_columns(m);
}

}  // namespace

TEST_CASE("planar: traced radii match closed forms") {
  const Basis z2 = z2_basis();
  const Cell2D cell = trace_cell2d(z2, NormSpec::parse("l2"), 720);
  REQUIRE(cell.samples.size() == 720);
  CHECK(cell.samples[0].theta == 0.0);
  // Facet of +-e1 crosses the x axis at distance 1/2.
  CHECK(cell.samples[0].radius == doctest::Approx(0.5).epsilon(1e-12));
  // Corner of the unit-square cell at angle pi/4.
  CHECK(cell.samples[90].theta == doctest::Approx(3.14159265358979 / 4).epsilon(1e-12));
  CHECK(cell.samples[90].radius == doctest::Approx(0.7071067811865476).epsilon(1e-12));
  // radius is the euclidean length of point, on the ray at angle theta.
  for (int i : {0, 90, 333}) {
    const auto& s = cell.samples[size_t(i)];
    CHECK(s.point.norm() == doctest::Approx(s.radius).epsilon(1e-12));
    CHECK(s.point[0] == doctest::Approx(s.radius * std::cos(s.theta)).epsilon(1e-12));
    CHECK(!s.ties.empty());
    for (int t : s.ties) {
      CHECK(t >= 0);
      CHECK(t < int(cell.generators.size()));
    }
  }

  // l1 cell of the skew lattice: ray at 7pi/4 exits through (3/4, -3/4).
  const Cell2D l1cell = trace_cell2d(skew_basis(), NormSpec::parse("l1"), 720);
  CHECK(l1cell.samples[630].theta == doctest::Approx(7 * 3.14159265358979 / 4).epsilon(1e-12));
  CHECK(l1cell.samples[630].radius == doctest::Approx(1.0606601717798212).epsilon(1e-12));
}

TEST_CASE("planar: trace rejects bad input and is deterministic") {
  Eigen::Matrix3d m3 = Eigen::Matrix3d::Identity();
  CHECK_THROWS_AS(trace_cell2d(Basis::from_columns(m3), NormSpec::parse("l2"), 720),
                  NotPlanar);
  CHECK_THROWS_AS(trace_cell2d(z2_basis(), NormSpec::parse("l2"), 4), InputError);

  const Cell2D a = trace_cell2d(skew_basis(), NormSpec::parse("l1.5"), 360);
  const Cell2D b = trace_cell2d(skew_basis(), NormSpec::parse("l1.5"), 360);
  REQUIRE(a.samples.size() == b.samples.size());
  for (size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].theta == b.samples[i].theta);
    CHECK(a.samples[i].radius == b.samples[i].radius);
    CHECK(a.samples[i].point == b.samples[i].point);
    CHECK(a.samples[i].ties == b.samples[i].ties);
  }
}

TEST_CASE("planar: facet count is 4 or 6 and matches the relevant count") {
  for (const char* p : {"l1.5", "l2", "l3"}) {
    const NormSpec norm = NormSpec::parse(p);
    const FourOrSixResult sq = check_4or6(z2_basis(), norm);
    CHECK(sq.relevant_count == 4);
    CHECK(sq.facet_count == 4);
    const FourOrSixResult hex = check_4or6(skew_basis(), norm);
    CHECK(hex.relevant_count == 6);
    CHECK(hex.facet_count == 6);
    // Facets come back in circular order with distinct generators.
    std::set<int> gens;
    for (const auto& f : hex.facets) {
      CHECK(f.len >= 3);
      gens.insert(f.generator);
    }
    CHECK(long(gens.size()) == hex.facet_count);
  }

  CHECK_THROWS_AS(check_4or6(z2_basis(), NormSpec::parse("l1")), NonConvexNormRouting);
  CHECK_THROWS_AS(check_4or6(z2_basis(), NormSpec::parse("linf")), NonConvexNormRouting);
  Eigen::Matrix3d m3 = Eigen::Matrix3d::Identity();
  CHECK_THROWS_AS(check_4or6(Basis::from_columns(m3), NormSpec::parse("l2")), NotPlanar);
}

TEST_CASE("planar: l1 cell of the skew lattice has six facet runs") {
  const Cell2D cell = trace_cell2d(skew_basis(), NormSpec::parse("l1"), 720);
  const std::vector<Facet2D> facets = extract_facets(cell);
  CHECK(facets.size() == 6);
  for (size_t i = 1; i < facets.size(); ++i)
    CHECK(facets[i - 1].first < facets[i].first);  // circular order
}

TEST_CASE("planar: l1 family census matches the closed-form count") {
  const L1FamilyReport r3 = l1_family_weak_relevant(3);
  CHECK(r3.m == 3);
  CHECK(r3.expected_count == 6);  // 4*floor(3/2) + 2
  CHECK(r3.vectors.size() == 6);
  CHECK(r3.hole[0] == 0.0);
  CHECK(r3.hole[1] == 1.5);
  const std::vector<std::pair<Eigen::Vector2i, Eigen::Vector2i>> expect = {
      {{-1, 0}, {-1, -1}}, {{-1, 1}, {-1, 2}}, {{0, -1}, {0, -3}},
      {{0, 1}, {0, 3}},    {{1, -1}, {1, -2}}, {{1, 0}, {1, 1}},
  };
  REQUIRE(r3.vectors.size() == expect.size());
  for (size_t i = 0; i < expect.size(); ++i) {
    CHECK(r3.vectors[i].coeffs == expect[i].first);
    CHECK(r3.vectors[i].coords == expect[i].second);
  }

  for (auto [m, count] : std::vector<std::pair<long, long>>{
           {2, 6}, {4, 10}, {5, 10}, {9, 18}, {100, 202}}) {
    const L1FamilyReport r = l1_family_weak_relevant(m);
    CHECK(r.expected_count == count);
    CHECK(long(r.vectors.size()) == count);
    // Census is symmetric under negation.
    std::set<std::pair<int, int>> seen;
    for (const auto& v : r.vectors) seen.insert({v.coeffs[0], v.coeffs[1]});
    for (const auto& v : r.vectors)
      CHECK(seen.count({-v.coeffs[0], -v.coeffs[1]}) == 1);
  }

  CHECK_THROWS_AS(l1_family_weak_relevant(1), InputError);
  CHECK_THROWS_AS(l1_family_weak_relevant(2001), InputError);
}

TEST_CASE("planar: svg rendering produces a standalone document") {
  const Basis b = l1_family_basis(3);
  const Cell2D cell = trace_cell2d(b, NormSpec::parse("l1"), 360);
  const std::vector<Facet2D> facets = extract_facets(cell);

  RenderOptions opt;
  opt.shade_ties = true;
  opt.raster = 60;
  const L1FamilyReport fam = l1_family_weak_relevant(3);
  for (const auto& v : fam.vectors) opt.highlight.push_back(v.coeffs);

  const std::string svg = render_svg(cell, facets, opt);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("<polygon") != std::string::npos);
  CHECK(svg.find("<circle") != std::string::npos);
  CHECK(svg.size() > 1000);
  CHECK(svg.substr(svg.size() - 7) == "</svg>\n");

  // Plain render without shading works too.
  const std::string plain = render_svg(cell, facets);
  CHECK(plain.rfind("<svg", 0) == 0);
  CHECK(plain.size() < svg.size());  // no raster rects
}
