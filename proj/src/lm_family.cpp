#include "vorlat/lm_family.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <type_traits>

#include "vorlat/errors.hpp"

namespace vorlat {

using Float50 = boost::multiprecision::cpp_bin_float_50;

long isqrt_long(long m) {
  if (m < 0) throw InputError("isqrt of negative value");
  long r = static_cast<long>(std::floor(std::sqrt(static_cast<double>(m))));
  while ((r + 1) * (r + 1) <= m) ++r;
  while (r * r > m) --r;
  return r;
}

const char* numeric_mode_name(NumericMode m) {
  return m == NumericMode::binary64 ? "binary64" : "extended";
}

NumericMode numeric_mode_from_name(const std::string& s) {
  if (s == "binary64") return NumericMode::binary64;
  if (s == "extended") return NumericMode::extended;
  throw InputError("unknown numeric mode '" + s + "' (use binary64 or extended)");
}

namespace {

template <class Real>
Real int_pow(Real base, int e) {
  Real r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

inline double to_double(double x) { return x; }
inline double to_double(const Float50& x) { return x.convert_to<double>(); }

// Compensated (Neumaier) three-term sum for the binary64 path; plain sum in
// extended precision.
inline double sum3(double x, double y, double z) {
  double s = x + y;
  double c = std::fabs(x) >= std::fabs(y) ? (x - s) + y : (y - s) + x;
  double t = s + z;
  c += std::fabs(s) >= std::fabs(z) ? (s - t) + z : (z - t) + s;
  return t + c;
}
inline Float50 sum3(const Float50& x, const Float50& y, const Float50& z) { return x + y + z; }

template <class Real>
struct LmMath {
  long m, k;
  Real rt2, s, a, M;

  LmMath(long m_, long k_) : m(m_), k(k_) {
    using std::sqrt;
    rt2 = sqrt(Real(2));
    s = sqrt(Real(m) * Real(m) + 1);
    a = (Real(k) * Real(k) / 4 + Real(1) / 3) * Real(m);
    M = 5 * rt2 * int_pow(Real(m), 5);
  }

  static Real cube_abs(Real x) {
    using std::fabs;
    using boost::multiprecision::fabs;
    const Real u = fabs(x);
    return (u * u) * u;
  }

  // f(r1, r2) = |a - B|^3 + |a + B|^3 + |C|^3 with
  //   B = ((2 r1 - 1) m - (2 r2 - k)) / (2 sqrt2 s)
  //   C = ((2 r2 - k) m + (2 r1 - 1)) / (2 s)
  Real f(Real r1, Real r2) const {
    const Real u1 = 2 * r1 - 1;
    const Real u2 = 2 * r2 - Real(k);
    const Real B = (u1 * Real(m) - u2) / (2 * rt2 * s);
    const Real C = (u2 * Real(m) + u1) / (2 * s);
    return sum3(cube_abs(a - B), cube_abs(a + B), cube_abs(C));
  }

  // Witness coordinates: x = (e + a, (k m + 1)/(2 s), -e + a),
  // e = (m - k) / (2 sqrt2 s).
  Real witness_e() const { return (Real(m) - Real(k)) / (2 * rt2 * s); }
  Real witness_x2() const { return (Real(k) * Real(m) + 1) / (2 * s); }

  // Cubed l3 distance from the witness to the plane spanned by b1, b2
  // shifted by z3 * b3: (1/4)|sqrt2 M z3 - (x1 + x3)|^3, and x1 + x3 = 2a.
  Real layer_distance_cubed(long z3) const {
    using std::fabs;
    using boost::multiprecision::fabs;
    const Real gap = fabs(rt2 * (M * Real(z3)) - 2 * a);
    return (gap * gap) * gap / 4;
  }
};

template <class Real>
ClaimRecord offplane_impl(long m, long k) {
  LmMath<Real> lm(m, k);
  ClaimRecord rec;
  rec.k = k;
  rec.kind = "offplane";

  const Real m15 = int_pow(Real(m), 15);
  const Real fw = lm.f(Real(0), Real(0));

  {
    InequalityCheck c;
    c.name = "witness_norm_cubed_below_4m15";
    const Real rhs = 4 * m15;
    c.lhs = to_double(fw);
    c.rhs = to_double(rhs);
    c.threshold = to_double(Real(rhs * Real(1e-6)));
    c.margin = to_double(Real(rhs - fw));
    c.pass = rhs - fw > rhs * Real(1e-6);
    rec.checks.push_back(std::move(c));
  }
  for (const long z3 : {+1L, -1L}) {
    InequalityCheck c;
    c.name = z3 > 0 ? "layer_plus1_above_200m15" : "layer_minus1_above_200m15";
    const Real lhs = 200 * m15;
    const Real rhs = lm.layer_distance_cubed(z3);
    c.lhs = to_double(lhs);
    c.rhs = to_double(rhs);
    c.threshold = to_double(Real(lhs * Real(1e-6)));
    c.margin = to_double(Real(rhs - lhs));
    c.pass = rhs - lhs > lhs * Real(1e-6);
    rec.checks.push_back(std::move(c));
  }
  {
    // Nearest-layer reduction: the offset (x1+x3)/(sqrt2 M) = a/(5 m^5)
    // must lie in (0, 1/60] so that |z3| >= 2 layers are farther than
    // z3 = +-1.
    InequalityCheck c;
    c.name = "layer_offset_in_unit_interval";
    const Real off = lm.a / (5 * int_pow(Real(m), 5));
    c.lhs = to_double(off);
    c.rhs = 1.0 / 60.0;
    c.threshold = 0.0;
    c.margin = to_double(Real(Real(1) / 60 - off));
    c.pass = off > 0 && off <= Real(1) / 60;
    rec.checks.push_back(std::move(c));
  }

  rec.pass = true;
  for (const auto& c : rec.checks) rec.pass = rec.pass && c.pass;
  return rec;
}

template <class Real>
ClaimRecord inplane_impl(long m, long k, int window) {
  LmMath<Real> lm(m, k);
  ClaimRecord rec;
  rec.k = k;
  rec.kind = "inplane";

  const Real fw = lm.f(Real(0), Real(0));
  const Real delta = Real(1e-6) * Real(m) * Real(m);

  const long w = window;
  const long z1_lo = -w, z1_hi = w + 1;
  const long z2_lo = k - w * (k + 2), z2_hi = w * (k + 2);

  // Box sweep.
  Real min_gap = 0;
  bool have_gap = false;
  long arg1 = 0, arg2 = 0;
  for (long z1 = z1_lo; z1 <= z1_hi; ++z1) {
    for (long z2 = z2_lo; z2 <= z2_hi; ++z2) {
      if ((z1 == 0 && z2 == 0) || (z1 == 1 && z2 == k)) continue;
      const Real gap = lm.f(Real(z1), Real(z2)) - fw;
      if (!have_gap || gap < min_gap) {
        min_gap = gap;
        arg1 = z1;
        arg2 = z2;
        have_gap = true;
      }
    }
  }
  {
    InequalityCheck c;
    c.name = "inplane_box_min_gap(z1=" + std::to_string(arg1) + ",z2=" + std::to_string(arg2) +
             ")";
    c.lhs = to_double(fw);
    c.rhs = to_double(Real(fw + min_gap));
    c.margin = to_double(min_gap);
    c.threshold = to_double(delta);
    c.pass = min_gap > delta;
    rec.checks.push_back(std::move(c));
  }

  // Convexity tail certificate: f increases stepping outward across every
  // boundary point of the box (both axes at corners).  With f strictly
  // convex, growth at the boundary propagates along each outward ray.
  {
    Real min_inc = 0;
    bool have_inc = false;
    long barg1 = 0, barg2 = 0;
    const auto check_dir = [&](long z1, long z2, long d1, long d2) {
      const Real inc = lm.f(Real(z1), Real(z2)) - lm.f(Real(z1 - d1), Real(z2 - d2));
      if (!have_inc || inc < min_inc) {
        min_inc = inc;
        barg1 = z1;
        barg2 = z2;
        have_inc = true;
      }
    };
    for (long z1 = z1_lo; z1 <= z1_hi; ++z1) {
      check_dir(z1, z2_lo, 0, -1);
      check_dir(z1, z2_hi, 0, +1);
    }
    for (long z2 = z2_lo; z2 <= z2_hi; ++z2) {
      check_dir(z1_lo, z2, -1, 0);
      check_dir(z1_hi, z2, +1, 0);
    }
    InequalityCheck c;
    c.name = "boundary_outward_increase(z1=" + std::to_string(barg1) + ",z2=" +
             std::to_string(barg2) + ")";
    c.lhs = 0.0;
    c.rhs = to_double(min_inc);
    c.margin = to_double(min_inc);
    c.threshold = to_double(delta);
    c.pass = min_inc > delta;
    rec.checks.push_back(std::move(c));
  }

  {
    // Symmetry consistency: f(1, k) = f(0, 0).
    InequalityCheck c;
    c.name = "witness_symmetry_f(1,k)_eq_f(0,0)";
    const Real diff = lm.f(Real(1), Real(k)) - fw;
    using std::fabs;
    using boost::multiprecision::fabs;
    c.lhs = to_double(Real(fabs(diff)));
    c.rhs = to_double(Real(fw * Real(1e-12)));
    c.margin = c.rhs - c.lhs;
    c.threshold = 0.0;
    c.pass = fabs(diff) <= fw * Real(1e-12);
    rec.checks.push_back(std::move(c));
  }

  rec.pass = true;
  for (const auto& c : rec.checks) rec.pass = rec.pass && c.pass;
  return rec;
}

}  // namespace

Basis LmInstance::make_basis() const { return Basis::from_columns(columns); }

LmInstance build_lm(long m) {
  if (m < 2) throw InputError("build_lm: m must be >= 2, got " + std::to_string(m));
  LmInstance inst;
  inst.m = m;
  const double rt2 = std::sqrt(2.0);
  const double s = std::sqrt(static_cast<double>(m) * m + 1.0);
  const double m5 = static_cast<double>(m) * m * m * m * m;
  inst.M = 5.0 * rt2 * m5;
  const double e = m / (rt2 * s);
  const double q = 1.0 / (rt2 * s);
  inst.b1 = Eigen::Vector3d(e, 1.0 / s, -e);
  inst.b2 = Eigen::Vector3d(-q, m / s, q);
  inst.b3 = Eigen::Vector3d(5.0 * m5, 0.0, 5.0 * m5);
  inst.columns.col(0) = inst.b1;
  inst.columns.col(1) = inst.b2;
  inst.columns.col(2) = inst.b3;
  return inst;
}

LmWitness witness_xmk(const LmInstance& inst, long k) {
  if (k < 2 || k > inst.m)
    throw KOutOfRange("witness_xmk: k must satisfy 2 <= k <= m, got k = " + std::to_string(k) +
                      " for m = " + std::to_string(inst.m));
  LmMath<double> lm(inst.m, k);
  LmWitness w;
  w.m = inst.m;
  w.k = k;
  const double e = lm.witness_e();
  w.x = Eigen::Vector3d(e + lm.a, lm.witness_x2(), -e + lm.a);
  w.norm_cubed = lm.f(0.0, 0.0);
  return w;
}

double f_value(const LmInstance& inst, long k, double r1, double r2, NumericMode mode) {
  if (k < 2 || k > inst.m)
    throw KOutOfRange("f_value: k must satisfy 2 <= k <= m");
  if (mode == NumericMode::extended) {
    LmMath<Float50> lm(inst.m, k);
    return to_double(lm.f(Float50(r1), Float50(r2)));
  }
  LmMath<double> lm(inst.m, k);
  return lm.f(r1, r2);
}

ClaimRecord verify_claim_offplane(const LmInstance& inst, long k, NumericMode mode) {
  if (k < 2 || k * k > inst.m)
    throw KOutOfRange("verify_claim_offplane: need 2 <= k <= sqrt(m)");
  return mode == NumericMode::extended ? offplane_impl<Float50>(inst.m, k)
                                       : offplane_impl<double>(inst.m, k);
}

ClaimRecord verify_claims_inplane(const LmInstance& inst, long k, int window, NumericMode mode) {
  if (k < 2 || k * k > inst.m)
    throw KOutOfRange("verify_claims_inplane: need 2 <= k <= sqrt(m)");
  if (window < 1) throw InputError("verify_claims_inplane: window must be >= 1");
  return mode == NumericMode::extended ? inplane_impl<Float50>(inst.m, k, window)
                                       : inplane_impl<double>(inst.m, k, window);
}

TheoremReport verify_theorem_main(long m, int window, NumericMode mode) {
  if (m < 4) throw InputError("verify_theorem_main: m must be >= 4");
  const NumericMode effective = m > 25 ? NumericMode::extended : mode;

  LmInstance inst = build_lm(m);
  TheoremReport rep;
  rep.m = m;
  rep.M = inst.M;
  rep.mode = effective;
  rep.window = window;
  rep.expected_count = isqrt_long(m) - 1;

  const long kmax = isqrt_long(m);
  for (long k = 2; k <= kmax; ++k) {
    ClaimRecord off = verify_claim_offplane(inst, k, effective);
    ClaimRecord in = verify_claims_inplane(inst, k, window, effective);
    const bool ok = off.pass && in.pass;
    rep.records.push_back(std::move(off));
    rep.records.push_back(std::move(in));
    if (ok) rep.certified_k.push_back(k);
  }
  rep.pass = static_cast<long>(rep.certified_k.size()) == rep.expected_count;
  return rep;
}

}  // namespace vorlat
