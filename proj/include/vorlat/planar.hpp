#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "vorlat/lattice.hpp"
#include "vorlat/norms.hpp"
#include "vorlat/relevant.hpp"

namespace vorlat {

// One boundary sample of a 2D cell: the farthest point of the cell along the
// ray at angle theta.  `radius` is the euclidean length of `point`, and
// `ties` lists the indices (into Cell2D::generators) of all lattice vectors
// whose norm-distance to `point` matches the norm of `point` within tie_tol.
struct CellSample {
  double theta = 0.0;
  double radius = 0.0;
  Eigen::Vector2d point = Eigen::Vector2d::Zero();
  std::vector<int> ties;
};

struct Cell2D {
  NormSpec norm;
  double mu_upper = 0.0;
  double tie_tol = 0.0;
  std::vector<LatticeVector> generators;  // all nonzero lattice vectors that can bound the cell
  std::vector<CellSample> samples;        // one per angle, theta = 2*pi*i/n
};

// A maximal circular run of consecutive samples tying with one generator.
// Sample indices are circular: the run covers first, first+1, ..., first+len-1
// (mod samples.size()).
struct Facet2D {
  int generator = 0;  // index into Cell2D::generators
  int first = 0;
  int len = 0;
};

// Trace the norm-ball Voronoi cell of the origin by bisecting along `angles`
// evenly spaced rays.  Works for every lp norm (the cell is star-shaped about
// the origin), including the non strictly convex l1 / linf cases where parts
// of the boundary tie with several generators at once.  The bisection itself
// is rootless: membership compares power sums, never norms.
// `angles` must be large enough that every facet subtends at least three
// consecutive rays, i.e. more than 3 * (2*pi/angles) of arc, for the facet
// extraction below to see it.
Cell2D trace_cell2d(const Basis& basis, const NormSpec& norm, int angles,
                    double tie_tol = 1e-8);

// Group boundary samples into facets: one maximal circular run (>= 3 samples)
// per generator, dropping runs strictly contained in a longer run of another
// generator (point touches of weakly relevant vectors sit inside the runs of
// the true facets on either side).  Returned in circular order of first sample.
std::vector<Facet2D> extract_facets(const Cell2D& cell);

// Relevant-vector classification cross-checked against the traced cell.
struct FourOrSixResult {
  RelevantReport report;
  Cell2D cell;
  std::vector<Facet2D> facets;
  long relevant_count = 0;
  long facet_count = 0;
};

// For a 2D lattice under a strictly convex lp norm: enumerate relevant
// vectors, trace the cell, extract facets, and require that the relevant
// count is even, equals the facet count, is either 4 or 6, and that facet
// generators coincide with the relevant vectors.  Throws CountViolation if
// any of these fail, NotPlanar if dim != 2, NonConvexNormRouting for l1/linf.
FourOrSixResult check_4or6(const Basis& basis, const NormSpec& norm, int angles = 720);

// The two-generator family lattice spanned by (1, 1) and (0, m).
Basis l1_family_basis(long m);

struct L1FamilyVector {
  Eigen::Vector2i coeffs;  // (z1, z2) in the basis above
  Eigen::Vector2i coords;  // (z1, z1 + m*z2), exact
};

// All weakly relevant vectors of the family lattice under l1 that are
// certified by the two deep holes +-(0, m/2): exact integer arithmetic on
// doubled coordinates, exhaustive over the box (z1, z2) in [-m, m]^2 (which
// provably contains every candidate).  The count is 4*floor(m/2) + 2.
struct L1FamilyReport {
  long m = 0;
  long expected_count = 0;
  Eigen::Vector2d hole;  // (0, m/2); the mirrored hole certifies the negations
  std::vector<L1FamilyVector> vectors;  // lex sorted by coeffs
};

// Throws CountViolation if the census does not match the expected count, and
// InputError for m < 2 or m > 2000 (the sweep is exhaustive).
L1FamilyReport l1_family_weak_relevant(long m);

struct RenderOptions {
  int size = 640;           // pixel size of the longer viewBox side
  bool shade_ties = false;  // raster-shade regions whose nearest vector ties
  int raster = 150;         // shading grid resolution per axis
  std::vector<Eigen::Vector2i> highlight;  // coefficient pairs to ring-mark
};

// Standalone SVG: cell polygon, facet arcs (colored), nearby lattice points,
// optional tie shading (darkened cells where >= 2 lattice vectors are
// simultaneously nearest, which draws the fat l1 bisector regions).
std::string render_svg(const Cell2D& cell, const std::vector<Facet2D>& facets,
                       const RenderOptions& opt = {});

}  // namespace vorlat
