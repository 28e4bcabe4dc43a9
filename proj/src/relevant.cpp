#include "vorlat/relevant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vorlat/errors.hpp"
#include "vorlat/parallel.hpp"

namespace vorlat {

const char* status_name(RelevantStatus s) {
  switch (s) {
    case RelevantStatus::Relevant:
      return "Relevant";
    case RelevantStatus::WeakOnly:
      return "WeakOnly";
    case RelevantStatus::NotRelevant:
      return "NotRelevant";
    case RelevantStatus::Undecided:
      return "Undecided";
  }
  return "?";
}

RelevantStatus status_from_name(const std::string& s) {
  if (s == "Relevant") return RelevantStatus::Relevant;
  if (s == "WeakOnly") return RelevantStatus::WeakOnly;
  if (s == "NotRelevant") return RelevantStatus::NotRelevant;
  if (s == "Undecided") return RelevantStatus::Undecided;
  throw InputError("unknown relevance status '" + s + "'");
}

namespace {

// The p-th-power margin phi(t) = ps(b + t v) - ps(b + t v - v) is
// nondecreasing in t for every lp norm (each coordinate contributes
// v_j * (psi_j(t) - psi_j(t-1)) >= 0 to the derivative), so the bisector
// crossing along v is unique up to a flat tie segment and bracketed
// bisection on power sums finds it without evaluating roots.
std::optional<double> bisector_crossing_t(const kernels::PKind& pk, const Eigen::VectorXd& v,
                                          const Eigen::VectorXd& b) {
  const std::size_t n = static_cast<std::size_t>(v.size());
  Eigen::VectorXd xt(v.size()), xtv(v.size());
  const auto phi = [&](double t) {
    xt = b + t * v;
    xtv = xt - v;
    return kernels::power_sum(pk, xt.data(), n) - kernels::power_sum(pk, xtv.data(), n);
  };
  double lo = -0.75, hi = 0.75;
  double flo = phi(lo), fhi = phi(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  int guard = 0;
  while (flo > 0.0 && guard++ < 60) {
    hi = lo;
    fhi = flo;
    lo *= 2.0;
    flo = phi(lo);
  }
  while (fhi < 0.0 && guard++ < 60) {
    lo = hi;
    flo = fhi;
    hi *= 2.0;
    fhi = phi(hi);
  }
  if (!(flo <= 0.0 && fhi >= 0.0)) return std::nullopt;
  for (int it = 0; it < 80; ++it) {
    if (hi - lo <= 1e-14 * std::max(1.0, std::fabs(hi) + std::fabs(lo))) break;
    const double mid = 0.5 * (lo + hi);
    const double fm = phi(mid);
    if (fm == 0.0) return mid;
    if (fm < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

Eigen::MatrixXd orthonormal_complement(const Eigen::VectorXd& v) {
  const int n = static_cast<int>(v.size());
  Eigen::MatrixXd m(n, 1);
  m.col(0) = v;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  Eigen::MatrixXd q = qr.householderQ();
  return q.rightCols(n - 1);
}

}  // namespace

WitnessResult witness_search(const Basis& basis, const NormSpec& norm, const LatticeVector& v,
                             const std::vector<LatticeVector>& competitors,
                             const SearchParams& params, const Eigen::VectorXd* witness_hint) {
  const int n = basis.dim();
  if (v.coords.size() != n) throw DimensionMismatch("witness_search: v has wrong dimension");
  if (v.coeffs.isZero()) throw InputError("witness_search: v must be nonzero");
  if (!norm.strictly_convex() && witness_hint == nullptr)
    throw NonConvexNormRouting(
        "witness_search requires a witness hint for p in {1, inf}; "
        "use the planar cell tracer for 2D lattices");

  const auto pk = norm.pkind();

  // Every certifying witness lies in the Voronoi cell, so its norm is at most
  // the covering radius.  Beyond that bound a finite competitor list is not
  // guaranteed complete (a far point can beat every listed competitor while
  // losing to an unlisted lattice point), so past `cap` the objective switches
  // to a repelling penalty that also keeps the refinement walk bounded.
  const double mu = covering_radius_upper(basis, norm);
  const double cap = (1.0 + 1e-6) * mu;

  kernels::PointBlock block;
  {
    std::size_t cnt = 0;
    for (const auto& w : competitors)
      if (!w.coeffs.isZero() && w.coeffs != v.coeffs) ++cnt;
    block.assign(cnt, static_cast<std::size_t>(n));
    std::size_t i = 0;
    for (const auto& w : competitors) {
      if (w.coeffs.isZero() || w.coeffs == v.coeffs) continue;
      for (int j = 0; j < n; ++j) block.at(i, j) = w.coords(j);
      ++i;
    }
  }

  const auto g_of = [&](const Eigen::VectorXd& x) {
    const std::size_t nn = static_cast<std::size_t>(x.size());
    const double own = power_sum_root(norm, kernels::power_sum(pk, x.data(), nn));
    if (own > cap) return own;  // outside the cell: penalty, never certifies
    if (block.count == 0) return -own;  // no competitor can beat the witness
    const auto mn = kernels::min_power_sum(pk, x.data(), block);
    return own - power_sum_root(norm, mn.value);
  };

  WitnessResult best;
  best.margin = std::numeric_limits<double>::infinity();
  bool any_point = false;
  const auto consider = [&](const Eigen::VectorXd& x, double gx) {
    if (!any_point || gx < best.margin) {
      best.margin = gx;
      best.witness = x;
      any_point = true;
    }
  };

  if (!norm.strictly_convex()) {
    // Hint-only mode: no reliable local refinement for p in {1, inf}.
    if (std::fabs(bisector_margin(norm, v.coords, *witness_hint)) > params.tol) {
      best.status = RelevantStatus::Undecided;
      return best;
    }
    const double gx = g_of(*witness_hint);
    consider(*witness_hint, gx);
    if (gx < -params.tol)
      best.status = RelevantStatus::Relevant;
    else if (gx <= params.tol)
      best.status = RelevantStatus::WeakOnly;
    else
      best.status = RelevantStatus::Undecided;
    best.has_witness = best.status == RelevantStatus::Relevant ||
                       best.status == RelevantStatus::WeakOnly;
    return best;
  }

  const double extent = params.extent_scale * mu;
  const Eigen::VectorXd half = 0.5 * v.coords;
  const int axes = n - 1;
  Eigen::MatrixXd U;
  if (axes > 0) U = orthonormal_complement(v.coords);

  // y (complement coordinates) -> point on the bisector, or nothing if the
  // crossing bracket fails.
  const auto bisector_point = [&](const Eigen::VectorXd& y) -> std::optional<Eigen::VectorXd> {
    Eigen::VectorXd b = half;
    if (axes > 0) b += U * y;
    const auto t = bisector_crossing_t(pk, v.coords, b);
    if (!t) return std::nullopt;
    return Eigen::VectorXd(b + *t * v.coords);
  };

  struct Sample {
    Eigen::VectorXd y;
    Eigen::VectorXd x;
    double g = std::numeric_limits<double>::infinity();
    bool ok = false;
  };

  const int gpa = std::max(3, params.grid_per_axis);
  std::size_t total = 1;
  for (int a = 0; a < axes; ++a) total *= static_cast<std::size_t>(gpa);

  std::vector<Sample> samples(total);
  const auto y_of_index = [&](std::size_t idx) {
    Eigen::VectorXd y(axes);
    for (int a = 0; a < axes; ++a) {
      const std::size_t q = idx % static_cast<std::size_t>(gpa);
      idx /= static_cast<std::size_t>(gpa);
      y(a) = -extent + 2.0 * extent * static_cast<double>(q) / (gpa - 1);
    }
    return y;
  };

  parallel_for(total, [&](std::size_t i) {
    Sample s;
    s.y = axes > 0 ? y_of_index(i) : Eigen::VectorXd(0);
    if (auto x = bisector_point(s.y)) {
      s.x = std::move(*x);
      s.g = g_of(s.x);
      s.ok = true;
    }
    samples[i] = std::move(s);
  });

  std::vector<std::size_t> order;
  order.reserve(total);
  for (std::size_t i = 0; i < total; ++i)
    if (samples[i].ok) order.push_back(i);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (samples[a].g != samples[b].g) return samples[a].g < samples[b].g;
    return a < b;
  });
  for (std::size_t i : order) consider(samples[i].x, samples[i].g);

  // Pattern refinement (coordinate descent with shrinking step) from the
  // best grid samples, plus the hint if one was supplied.
  std::vector<Eigen::VectorXd> starts;
  const std::size_t nstarts = std::min<std::size_t>(
      order.size(), static_cast<std::size_t>(std::max(1, params.refine_starts)));
  for (std::size_t i = 0; i < nstarts; ++i) starts.push_back(samples[order[i]].y);
  if (witness_hint != nullptr && axes > 0)
    starts.push_back(U.transpose() * (*witness_hint - half));
  if (witness_hint != nullptr && axes == 0) starts.push_back(Eigen::VectorXd(0));

  const double h0 = axes > 0 ? 2.0 * extent / (gpa - 1) : 0.0;
  for (const auto& start : starts) {
    if (axes == 0) {
      if (auto x = bisector_point(Eigen::VectorXd(0))) consider(*x, g_of(*x));
      continue;
    }
    Eigen::VectorXd y = start;
    auto cur = bisector_point(y);
    if (!cur) continue;
    double gy = g_of(*cur);
    consider(*cur, gy);
    double step = h0;
    // Hard probe budget per start: descent normally converges in a few
    // hundred probes, but a long chain of tiny improvements must not stall
    // the search for hours.
    long probes_left = 8000;
    while (step >= params.step_tol && probes_left > 0) {
      bool improved = false;
      for (int a = 0; a < axes; ++a) {
        for (const double sgn : {+1.0, -1.0}) {
          if (--probes_left < 0) break;
          Eigen::VectorXd yt = y;
          yt(a) += sgn * step;
          const auto xt = bisector_point(yt);
          if (!xt) continue;
          const double gt = g_of(*xt);
          if (gt < gy) {
            y = std::move(yt);
            gy = gt;
            consider(*xt, gt);
            improved = true;
          }
        }
      }
      if (!improved) step *= params.shrink;
    }
  }

  if (!any_point) {
    best.status = RelevantStatus::Undecided;
    return best;
  }
  if (best.margin < -params.tol)
    best.status = RelevantStatus::Relevant;
  else if (best.margin <= params.tol)
    best.status = RelevantStatus::WeakOnly;
  else
    best.status = RelevantStatus::NotRelevant;
  best.has_witness =
      best.status == RelevantStatus::Relevant || best.status == RelevantStatus::WeakOnly;
  return best;
}

RelevantReport enumerate_relevant(const Basis& basis, const NormSpec& norm,
                                  const SearchParams& params, std::int64_t budget) {
  if (!norm.strictly_convex())
    throw NonConvexNormRouting(
        "enumerate_relevant requires a strictly convex norm (p in (1, inf)); "
        "for 2D lattices under l1/linf use the planar cell tracer");
  const int n = basis.dim();
  const LatticeParams lp = compute_params(basis, norm, budget);

  RelevantReport report;
  report.norm = norm;
  report.lambda1 = lp.lambda1;
  report.mu_upper = lp.mu_upper;
  report.candidate_radius = 2.0 * lp.mu_upper;

  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(n);
  const auto candidates = enumerate_in_ball(basis, norm, zero, report.candidate_radius, budget);
  // The witness search only certifies points inside the cell (||x|| <= cap
  // with cap = (1+1e-6) mu), so any competitor that can beat or tie such a
  // point satisfies ||w|| <= ||x|| + ||x - w|| <= 2 ||x|| <= 2 cap.  One pool
  // enumeration of that ball covers every per-candidate competitor list.
  const double pool_radius = 2.0 * lp.mu_upper * (1.0 + 1e-6) + 1e-9;
  const auto pool = enumerate_in_ball(basis, norm, zero, pool_radius, budget);

  // Canonical representatives of +-v pairs (first nonzero coefficient > 0).
  std::vector<const LatticeVector*> reps;
  for (const auto& c : candidates) {
    if (c.coeffs.isZero()) continue;
    bool positive = false;
    for (int i = 0; i < c.coeffs.size(); ++i) {
      if (c.coeffs(i) != 0) {
        positive = c.coeffs(i) > 0;
        break;
      }
    }
    if (positive) reps.push_back(&c);
  }

  struct PairResult {
    WitnessResult wr;
  };
  std::vector<PairResult> pair_results(reps.size());

  parallel_for(reps.size(), [&](std::size_t i) {
    const LatticeVector& v = *reps[i];
    const Eigen::VectorXd vhalf = 0.5 * v.coords;
    const double limit = norm_eval(norm, vhalf) + 2.0 * lp.mu_upper * (1.0 + 1e-6) + 1e-9;
    std::vector<LatticeVector> comps;
    comps.reserve(pool.size());
    for (const auto& w : pool) {
      if (w.coeffs.isZero() || w.coeffs == v.coeffs) continue;
      Eigen::VectorXd d = w.coords - vhalf;
      if (norm_eval(norm, d) <= limit) comps.push_back(w);
    }
    pair_results[i].wr = witness_search(basis, norm, v, comps, params);
  });

  for (std::size_t i = 0; i < reps.size(); ++i) {
    const LatticeVector& v = *reps[i];
    const WitnessResult& wr = pair_results[i].wr;

    RelevantEntry plus;
    plus.v = v;
    plus.status = wr.status;
    plus.has_witness = wr.has_witness;
    plus.witness = wr.witness;
    plus.margin = wr.margin;

    // Mirror: x witnesses v iff x - v witnesses -v with identical margins.
    RelevantEntry minus;
    minus.v = LatticeVector{-v.coeffs, -v.coords};
    minus.status = wr.status;
    minus.has_witness = wr.has_witness;
    if (wr.witness.size() == n)
      minus.witness = wr.witness - v.coords;
    minus.margin = wr.margin;

    report.results.push_back(std::move(plus));
    report.results.push_back(std::move(minus));
  }

  std::sort(report.results.begin(), report.results.end(),
            [](const RelevantEntry& a, const RelevantEntry& b) {
              return coeffs_less(a.v.coeffs, b.v.coeffs);
            });

  for (const auto& e : report.results) {
    switch (e.status) {
      case RelevantStatus::Relevant:
        ++report.counts.relevant;
        break;
      case RelevantStatus::WeakOnly:
        ++report.counts.weak_only;
        break;
      case RelevantStatus::NotRelevant:
        ++report.counts.not_relevant;
        break;
      case RelevantStatus::Undecided:
        ++report.counts.undecided;
        break;
    }
  }

  const double bound = std::pow(1.0 + 4.0 * lp.mu_upper / lp.lambda1, n);
  if (static_cast<double>(report.counts.relevant + report.counts.weak_only) > bound + 1e-9)
    throw CountViolation("weakly relevant count " +
                         std::to_string(report.counts.relevant + report.counts.weak_only) +
                         " exceeds the packing bound " + std::to_string(bound));
  return report;
}

EuclideanRelevantResult euclidean_relevant_oracle(const Basis& basis, std::int64_t budget) {
  const int n = basis.dim();
  const NormSpec l2 = NormSpec::lp(2.0);
  const Basis doubled = Basis::from_columns(2.0 * basis.matrix());

  EuclideanRelevantResult out;
  const std::size_t cosets = (static_cast<std::size_t>(1) << n) - 1;
  for (std::size_t mask = 1; mask <= cosets; ++mask) {
    Eigen::VectorXi c(n);
    for (int i = 0; i < n; ++i) c(i) = (mask >> i) & 1 ? 1 : 0;
    const Eigen::VectorXd target = -basis.coords_of(c);

    // Babai start gives a radius guaranteed to contain the minimizers.
    Eigen::VectorXd y = doubled.solve(target);
    Eigen::VectorXi z0(n);
    for (int i = 0; i < n; ++i) z0(i) = static_cast<int>(std::lround(y(i)));
    const double r0 = (doubled.coords_of(z0) - target).norm();

    const auto pts = enumerate_in_ball(doubled, l2, target, r0, budget);
    double dmin = std::numeric_limits<double>::infinity();
    for (const auto& p : pts) dmin = std::min(dmin, (p.coords - target).norm());

    std::vector<LatticeVector> minimizers;
    const double tie_tol = 1e-9 * std::max(1.0, dmin);
    for (const auto& p : pts) {
      if ((p.coords - target).norm() <= dmin + tie_tol) {
        // Coset element: v = c + 2z.
        Eigen::VectorXi vz = c + 2 * p.coeffs;
        minimizers.push_back(LatticeVector{vz, basis.coords_of(vz)});
      }
    }
    if (minimizers.size() == 2 && minimizers[0].coeffs == -minimizers[1].coeffs) {
      out.relevant.push_back(std::move(minimizers[0]));
      out.relevant.push_back(std::move(minimizers[1]));
    } else {
      ++out.tie_cosets;
    }
  }
  std::sort(out.relevant.begin(), out.relevant.end(),
            [](const LatticeVector& a, const LatticeVector& b) {
              return coeffs_less(a.coeffs, b.coeffs);
            });
  return out;
}

CvpResult cvp_bruteforce(const Basis& basis, const NormSpec& norm, const Eigen::VectorXd& target,
                         std::int64_t budget) {
  const double mu = covering_radius_upper(basis, norm);
  const auto pts = enumerate_in_ball(basis, norm, target, mu, budget);
  if (pts.empty()) throw Error("cvp_bruteforce: empty ball of radius mu_upper (internal)");
  CvpResult best;
  best.distance = std::numeric_limits<double>::infinity();
  bool found = false;
  for (const auto& p : pts) {
    Eigen::VectorXd d = p.coords - target;
    const double dist = norm_eval(norm, d);
    if (!found || dist < best.distance) {
      best.distance = dist;
      best.closest = p;
      found = true;
    } else if (dist == best.distance && coeffs_less(p.coeffs, best.closest.coeffs)) {
      best.closest = p;  // deterministic representative among exact ties
    }
  }
  return best;
}

CvpResult cvp_walk_euclidean(const Basis& basis, const NormSpec& norm,
                             const Eigen::VectorXd& target,
                             const std::vector<LatticeVector>* relevant,
                             std::int64_t max_steps) {
  if (norm.is_inf || norm.p != 2.0)
    throw NotEuclidean("cvp_walk_euclidean requires the l2 norm");
  std::vector<LatticeVector> own;
  if (relevant == nullptr) {
    own = euclidean_relevant_oracle(basis).relevant;
    relevant = &own;
  }
  if (relevant->empty()) throw InputError("cvp_walk_euclidean: empty relevant set");

  const int n = basis.dim();
  Eigen::VectorXi z = Eigen::VectorXi::Zero(n);
  Eigen::VectorXd r = target;  // target - B z
  for (std::int64_t step = 0; step < max_steps; ++step) {
    const double eps = 1e-12 * (1.0 + r.squaredNorm());
    double best_gain = 0.0;
    const LatticeVector* pick = nullptr;
    for (const auto& v : *relevant) {
      const double gain = r.squaredNorm() - (r - v.coords).squaredNorm();
      if (gain <= eps) continue;
      if (pick == nullptr || gain > best_gain + eps) {
        best_gain = gain;
        pick = &v;
      } else if (gain >= best_gain - eps && coeffs_less(v.coeffs, pick->coeffs)) {
        best_gain = std::max(best_gain, gain);
        pick = &v;
      }
    }
    if (pick == nullptr) {
      CvpResult res;
      res.closest = LatticeVector{z, basis.coords_of(z)};
      res.distance = r.norm();
      return res;
    }
    z += pick->coeffs;
    r -= pick->coords;
  }
  throw BudgetExceeded("cvp_walk_euclidean did not converge within " +
                       std::to_string(max_steps) + " steps");
}

}  // namespace vorlat
