#include "vorlat/planar.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <set>
#include <vector>

#include "vorlat/errors.hpp"
#include "vorlat/kernels.hpp"

namespace vorlat {

namespace {

kernels::PointBlock block_of(const std::vector<LatticeVector>& pts, int dim) {
  kernels::PointBlock block;
  block.assign(pts.size(), static_cast<std::size_t>(dim));
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (int j = 0; j < dim; ++j) block.at(i, j) = pts[i].coords[j];
  return block;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

Cell2D trace_cell2d(const Basis& basis, const NormSpec& norm, int angles, double tie_tol) {
  if (basis.dim() != 2) throw NotPlanar("trace_cell2d requires a 2D lattice");
  if (angles < 8) throw InputError("trace_cell2d: need at least 8 angles");
  if (tie_tol <= 0) throw InputError("trace_cell2d: tie_tol must be positive");

  Cell2D cell;
  cell.norm = norm;
  cell.tie_tol = tie_tol;
  cell.mu_upper = covering_radius_upper(basis, norm);

  // Every lattice vector that can bound the cell at a point x with
  // ||x|| <= 1.0001 * mu_upper has norm <= 2 * 1.0001 * mu_upper; pad a bit.
  const double pool_radius = 2.001 * cell.mu_upper + 1e-9;
  for (auto& v : enumerate_in_ball(basis, norm, Eigen::Vector2d::Zero(), pool_radius))
    if (v.coeffs.squaredNorm() != 0) cell.generators.push_back(std::move(v));
  if (cell.generators.empty()) throw SingularBasis("trace_cell2d: no competitors found");

  const kernels::PointBlock block = block_of(cell.generators, 2);
  const kernels::PKind pk = norm.pkind();

  const auto inside = [&](const Eigen::Vector2d& x) {
    const double own = kernels::power_sum(pk, x.data(), 2);
    const double best = kernels::min_power_sum(pk, x.data(), block).value;
    return own <= best;
  };

  cell.samples.resize(static_cast<std::size_t>(angles));
  for (int i = 0; i < angles; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / angles;
    const Eigen::Vector2d d(std::cos(theta), std::sin(theta));
    const double dnorm = norm_eval(norm, d);
    double lo = 0.0;
    double hi = 1.0001 * cell.mu_upper / dnorm + 1e-9;
    // The cell lies in the mu_upper norm ball, so hi is strictly outside.
    for (int it = 0; it < 100 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
      const double mid = 0.5 * (lo + hi);
      (inside(mid * d) ? lo : hi) = mid;
    }

    CellSample& s = cell.samples[static_cast<std::size_t>(i)];
    s.theta = theta;
    s.radius = lo;
    s.point = lo * d;
    const double own_norm = norm_eval(norm, s.point);
    const double tol = tie_tol * std::max(1.0, own_norm);
    std::vector<double> dists(cell.generators.size());
    kernels::power_sum_batch(pk, s.point.data(), block, dists.data());
    for (std::size_t g = 0; g < dists.size(); ++g)
      if (std::abs(power_sum_root(norm, dists[g]) - own_norm) <= tol)
        s.ties.push_back(static_cast<int>(g));
  }
  return cell;
}

std::vector<Facet2D> extract_facets(const Cell2D& cell) {
  const int n = static_cast<int>(cell.samples.size());
  if (n == 0) return {};

  // Generators that tie anywhere on the boundary.
  std::set<int> active;
  for (const auto& s : cell.samples) active.insert(s.ties.begin(), s.ties.end());

  std::vector<Facet2D> runs;
  for (int g : active) {
    std::vector<char> has(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
      for (int t : cell.samples[static_cast<std::size_t>(i)].ties)
        if (t == g) has[static_cast<std::size_t>(i)] = 1;

    // Longest maximal circular run of this generator, via a doubled scan so
    // wraparound needs no special case.  A thin bisector meets a convex
    // boundary in one arc; if tie-tolerance noise ever splits it, keeping
    // the longest run is the robust choice.
    int best_start = 0, best_len = 0;
    int cur_start = 0, cur_len = 0;
    for (int i = 0; i < 2 * n; ++i) {
      if (has[static_cast<std::size_t>(i % n)]) {
        if (cur_len == 0) cur_start = i;
        if (++cur_len >= 2 * n) break;  // every sample ties with g
      } else {
        if (cur_len > best_len && cur_start < n) {
          best_len = cur_len;
          best_start = cur_start;
        }
        cur_len = 0;
      }
    }
    if (cur_len > best_len && cur_start < n) {
      best_len = cur_len;
      best_start = cur_start;
    }
    best_len = std::min(best_len, n);
    if (best_len >= 3 && best_len < n) runs.push_back(Facet2D{g, best_start, best_len});
  }

  // Drop runs strictly contained in a longer run of a different generator.
  const auto contained = [n](const Facet2D& a, const Facet2D& b) {
    const int rel = ((a.first - b.first) % n + n) % n;
    return rel + a.len <= b.len;
  };
  std::vector<Facet2D> facets;
  for (const auto& a : runs) {
    bool absorbed = false;
    for (const auto& b : runs)
      if (a.generator != b.generator && a.len < b.len && contained(a, b)) absorbed = true;
    if (!absorbed) facets.push_back(a);
  }
  std::sort(facets.begin(), facets.end(),
            [](const Facet2D& a, const Facet2D& b) { return a.first < b.first; });
  return facets;
}

FourOrSixResult check_4or6(const Basis& basis, const NormSpec& norm, int angles) {
  if (basis.dim() != 2) throw NotPlanar("check_4or6 requires a 2D lattice");

  FourOrSixResult res;
  res.report = enumerate_relevant(basis, norm);
  res.relevant_count = res.report.counts.relevant;

  res.cell = trace_cell2d(basis, norm, angles);
  res.facets = extract_facets(res.cell);
  res.facet_count = static_cast<long>(res.facets.size());

  if (res.relevant_count % 2 != 0)
    throw CountViolation("relevant count " + std::to_string(res.relevant_count) +
                         " is odd; relevant vectors come in +- pairs");
  if (res.relevant_count != 4 && res.relevant_count != 6)
    throw CountViolation("relevant count " + std::to_string(res.relevant_count) +
                         " violates the 4-or-6 law for strictly convex planar norms");
  if (res.facet_count != res.relevant_count)
    throw CountViolation("facet count " + std::to_string(res.facet_count) +
                         " != relevant count " + std::to_string(res.relevant_count));

  std::set<std::pair<int, int>> relevant_set, facet_set;
  for (const auto& e : res.report.results)
    if (e.status == RelevantStatus::Relevant)
      relevant_set.insert(std::pair<int, int>(e.v.coeffs[0], e.v.coeffs[1]));
  for (const auto& f : res.facets) {
    const auto& z = res.cell.generators[static_cast<std::size_t>(f.generator)].coeffs;
    facet_set.insert(std::pair<int, int>(z[0], z[1]));
  }
  if (relevant_set != facet_set)
    throw CountViolation("facet generators do not coincide with the relevant vectors");
  return res;
}

Basis l1_family_basis(long m) {
  if (m < 2) throw InputError("l1_family_basis: m must be >= 2");
  Eigen::Matrix2d cols;
  cols << 1.0, 0.0, 1.0, static_cast<double>(m);
  return Basis::from_columns(cols);
}

L1FamilyReport l1_family_weak_relevant(long m) {
  if (m < 2) throw InputError("l1_family_weak_relevant: m must be >= 2");
  if (m > 2000) throw InputError("l1_family_weak_relevant: m > 2000 (exhaustive sweep)");

  L1FamilyReport rep;
  rep.m = m;
  rep.expected_count = 4 * (m / 2) + 2;
  rep.hole = Eigen::Vector2d(0.0, 0.5 * static_cast<double>(m));

  // Doubled l1 distance from the hole (0, m/2) to z1*(1,1) + z2*(0,m):
  // d2 = |2 z1| + |m - 2 (z1 + m z2)|.  Outside the box both terms already
  // exceed m, so the sweep is exhaustive for {d2 <= m}.
  const auto d2 = [m](long z1, long z2) {
    return std::labs(2 * z1) + std::labs(m - 2 * (z1 + m * z2));
  };

  long min_d2 = -1;
  std::vector<Eigen::Vector2i> sphere;
  for (long z1 = -m; z1 <= m; ++z1)
    for (long z2 = -m; z2 <= m; ++z2) {
      if (z1 == 0 && z2 == 0) continue;
      const long d = d2(z1, z2);
      if (min_d2 < 0 || d < min_d2) min_d2 = d;
      if (d == m) sphere.push_back(Eigen::Vector2i(static_cast<int>(z1), static_cast<int>(z2)));
    }
  // The hole must be equidistant from the origin and its nearest lattice
  // points: dist(hole, 0) doubled is exactly m.
  if (min_d2 != m)
    throw CountViolation("deep-hole certificate failed: min doubled distance " +
                         std::to_string(min_d2) + " != " + std::to_string(m));

  // The mirrored hole -(0, m/2) certifies exactly the negated sphere, and the
  // two spheres are disjoint (a common member would satisfy v2 = 0, forcing
  // v = 0).  The family is their union.
  std::vector<Eigen::Vector2i> all = sphere;
  for (const auto& z : sphere) all.push_back(-z);
  std::sort(all.begin(), all.end(), [](const Eigen::Vector2i& a, const Eigen::Vector2i& b) {
    return a[0] != b[0] ? a[0] < b[0] : a[1] < b[1];
  });
  if (std::adjacent_find(all.begin(), all.end(), [](const Eigen::Vector2i& a,
                                                    const Eigen::Vector2i& b) {
        return a == b;
      }) != all.end())
    throw CountViolation("the two hole spheres unexpectedly intersect");

  for (const auto& z : all) {
    L1FamilyVector v;
    v.coeffs = z;
    v.coords = Eigen::Vector2i(z[0], static_cast<int>(z[0] + m * z[1]));
    rep.vectors.push_back(v);
  }
  if (static_cast<long>(rep.vectors.size()) != rep.expected_count)
    throw CountViolation("weakly relevant family count " + std::to_string(rep.vectors.size()) +
                         " != expected " + std::to_string(rep.expected_count));
  return rep;
}

std::string render_svg(const Cell2D& cell, const std::vector<Facet2D>& facets,
                       const RenderOptions& opt) {
  if (cell.samples.empty()) throw InputError("render_svg: empty cell");

  // Bounding box over samples and generators, in flipped-y screen space.
  double minx = 0, maxx = 0, miny = 0, maxy = 0;
  const auto grow = [&](double x, double y) {
    minx = std::min(minx, x);
    maxx = std::max(maxx, x);
    miny = std::min(miny, -y);
    maxy = std::max(maxy, -y);
  };
  for (const auto& s : cell.samples) grow(s.point.x(), s.point.y());
  for (const auto& g : cell.generators) grow(g.coords[0], g.coords[1]);
  const double spanx = maxx - minx, spany = maxy - miny;
  const double pad = 0.1 * std::max(spanx, spany);
  minx -= pad;
  miny -= pad;
  const double w = spanx + 2 * pad, h = spany + 2 * pad;
  const double px = std::max(w, h) / opt.size;  // world units per pixel

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + fmt(minx) + " " + fmt(miny) +
         " " + fmt(w) + " " + fmt(h) + "\" width=\"" + std::to_string(opt.size) + "\">\n";
  svg += "<rect x=\"" + fmt(minx) + "\" y=\"" + fmt(miny) + "\" width=\"" + fmt(w) +
         "\" height=\"" + fmt(h) + "\" fill=\"#fdfdfd\"/>\n";

  if (opt.shade_ties && opt.raster > 1) {
    kernels::PointBlock block = block_of(cell.generators, 2);
    const kernels::PKind pk = cell.norm.pkind();
    std::vector<double> dists(cell.generators.size());
    const double cw = w / opt.raster, ch = h / opt.raster;
    svg += "<g fill=\"#355070\" fill-opacity=\"0.3\">\n";
    for (int iy = 0; iy < opt.raster; ++iy)
      for (int ix = 0; ix < opt.raster; ++ix) {
        const double sx = minx + (ix + 0.5) * cw;
        const double sy = miny + (iy + 0.5) * ch;
        const Eigen::Vector2d x(sx, -sy);  // back to world coords
        kernels::power_sum_batch(pk, x.data(), block, dists.data());
        double best = kernels::power_sum(pk, x.data(), 2);
        for (double d : dists) best = std::min(best, d);
        const double best_norm = power_sum_root(cell.norm, best);
        const double tol = 1e-6 * std::max(1.0, best_norm);
        int nearest = power_sum_root(cell.norm, kernels::power_sum(pk, x.data(), 2)) <=
                              best_norm + tol
                          ? 1
                          : 0;
        for (double d : dists)
          if (power_sum_root(cell.norm, d) <= best_norm + tol) ++nearest;
        if (nearest >= 2)
          svg += "<rect x=\"" + fmt(minx + ix * cw) + "\" y=\"" + fmt(miny + iy * ch) +
                 "\" width=\"" + fmt(cw * 1.02) + "\" height=\"" + fmt(ch * 1.02) + "\"/>\n";
      }
    svg += "</g>\n";
  }

  // Cell polygon.
  svg += "<polygon points=\"";
  for (const auto& s : cell.samples)
    svg += fmt(s.point.x()) + "," + fmt(-s.point.y()) + " ";
  svg += "\" fill=\"#76b041\" fill-opacity=\"0.25\" stroke=\"#555\" stroke-width=\"" +
         fmt(1.0 * px) + "\"/>\n";

  // Facet arcs.
  static const char* kPalette[] = {"#e4572e", "#17bebb", "#ffc914", "#9b5de5",
                                   "#2e8b57", "#d1495b"};
  const int n = static_cast<int>(cell.samples.size());
  for (std::size_t f = 0; f < facets.size(); ++f) {
    const char* color = kPalette[f % (sizeof(kPalette) / sizeof(kPalette[0]))];
    svg += "<polyline points=\"";
    for (int k = 0; k < facets[f].len; ++k) {
      const auto& s = cell.samples[static_cast<std::size_t>((facets[f].first + k) % n)];
      svg += fmt(s.point.x()) + "," + fmt(-s.point.y()) + " ";
    }
    svg += "\" fill=\"none\" stroke=\"";
    svg += color;
    svg += "\" stroke-width=\"" + fmt(3.0 * px) + "\" stroke-linecap=\"round\"/>\n";
    const auto& gen = cell.generators[static_cast<std::size_t>(facets[f].generator)];
    svg += "<circle cx=\"" + fmt(gen.coords[0]) + "\" cy=\"" + fmt(-gen.coords[1]) +
           "\" r=\"" + fmt(4.0 * px) + "\" fill=\"";
    svg += color;
    svg += "\"/>\n";
  }

  // Lattice points and origin.
  svg += "<g fill=\"#333\">\n";
  for (const auto& g : cell.generators)
    svg += "<circle cx=\"" + fmt(g.coords[0]) + "\" cy=\"" + fmt(-g.coords[1]) + "\" r=\"" +
           fmt(2.0 * px) + "\"/>\n";
  svg += "</g>\n<circle cx=\"0\" cy=\"0\" r=\"" + fmt(3.0 * px) +
         "\" fill=\"#000\" stroke=\"#fff\" stroke-width=\"" + fmt(0.8 * px) + "\"/>\n";

  for (const auto& hz : opt.highlight)
    for (const auto& g : cell.generators)
      if (g.coeffs[0] == hz[0] && g.coeffs[1] == hz[1])
        svg += "<circle cx=\"" + fmt(g.coords[0]) + "\" cy=\"" + fmt(-g.coords[1]) +
               "\" r=\"" + fmt(6.0 * px) +
               "\" fill=\"none\" stroke=\"#e4572e\" stroke-width=\"" + fmt(1.5 * px) + "\"/>\n";

  svg += "</svg>\n";
  return svg;
}

}  // namespace vorlat
