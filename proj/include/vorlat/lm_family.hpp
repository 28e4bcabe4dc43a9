#pragma once

#include <string>
#include <vector>

#include "vorlat/lattice.hpp"

namespace vorlat {

// Three-dimensional lattice family with unboundedly many relevant vectors
// under l3.  Columns (s = sqrt(m^2+1), M = 5*sqrt2*m^5):
//   b1 = (m/sqrt2, 1, -m/sqrt2)/s
//   b2 = (-1/sqrt2, m, 1/sqrt2)/s
//   b3 = (M/sqrt2)(1, 0, 1) = (5 m^5, 0, 5 m^5)
// b1, b2 are orthonormal; b3 is long and pushes every out-of-plane lattice
// layer far away under l3.
struct LmInstance {
  long m = 0;
  double M = 0.0;
  Eigen::Vector3d b1, b2, b3;
  Eigen::Matrix3d columns;

  // Validated basis object.  The aspect ratio M grows like m^5, so this
  // passes the conditioning gate only up to m = 25; the claim verifiers
  // never need it.
  Basis make_basis() const;
};

LmInstance build_lm(long m);  // pre: m >= 2

// Witness x_{m,k} = (b1 + k b2)/2 + (alpha, 0, alpha), alpha = (k^2/4+1/3)m.
// Lies on the bisector of (0, b1 + k b2) exactly.
struct LmWitness {
  long m = 0;
  long k = 0;
  Eigen::Vector3d x;
  double norm_cubed = 0.0;  // ||x||_3^3 = f(0,0)
};

LmWitness witness_xmk(const LmInstance& inst, long k);  // pre: 2 <= k <= m

enum class NumericMode { binary64, extended };
const char* numeric_mode_name(NumericMode m);
NumericMode numeric_mode_from_name(const std::string& s);

// f(r1, r2) = || r1 b1 + r2 b2 - x_{m,k} ||_3^3, the cubed l3 distance from
// the witness to a point of the b1/b2 plane.  Strictly convex; symmetric
// under (r1, r2) -> (1-r1, k-r2); global minimum at (1/2, k/2).
// binary64 mode uses compensated summation; extended mode evaluates in a
// 50-significant-digit float.
double f_value(const LmInstance& inst, long k, double r1, double r2,
               NumericMode mode = NumericMode::binary64);

// One verified inequality lhs < rhs: margin = rhs - lhs must exceed the
// threshold for pass.
struct InequalityCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct ClaimRecord {
  long k = 0;
  std::string kind;  // "offplane" | "inplane"
  std::vector<InequalityCheck> checks;
  bool pass = false;
};

// Off-plane claim, k in [2, sqrt(m)]:
//   ||x_{m,k}||_3^3 < 4 m^15, and the distance from x_{m,k} to the lattice
//   layers z3 = +-1 (planes E_{M z3}) satisfies
//   (1/4)|sqrt2 M z3 - x1 - x3|^3 >= 200 m^15.
// Together: every lattice point off the b1/b2 plane is farther from the
// witness than 0 is (nearer layers dominate farther ones since
// (x1+x3)/(sqrt2 M) lies in (0, 1/60]).
ClaimRecord verify_claim_offplane(const LmInstance& inst, long k,
                                  NumericMode mode = NumericMode::binary64);

// In-plane claim, k in [2, sqrt(m)]: f(0,0) < f(z1,z2) - delta for all
// integer points of the window box z1 in [-w, w+1], z2 in [k-w(k+2), w(k+2)]
// except (0,0) and (1,k), with delta = 1e-6 * m^2 (the scale of the decisive
// differences).  The tail outside the box is delegated to strict convexity
// of f certified by outward increase at every boundary point of the box.
ClaimRecord verify_claims_inplane(const LmInstance& inst, long k, int window = 6,
                                  NumericMode mode = NumericMode::binary64);

struct TheoremReport {
  long m = 0;
  double M = 0.0;
  NumericMode mode = NumericMode::binary64;
  int window = 6;
  long expected_count = 0;  // floor(sqrt(m)) - 1
  std::vector<long> certified_k;
  std::vector<ClaimRecord> records;
  bool pass = false;
};

// Certifies b1 + k b2 for every k in [2, sqrt(m)] via the off-plane and
// in-plane claims.  m > 25 forces extended precision regardless of the
// requested mode.  pre: m >= 4.
TheoremReport verify_theorem_main(long m, int window = 6,
                                  NumericMode mode = NumericMode::binary64);

long isqrt_long(long m);

}  // namespace vorlat
