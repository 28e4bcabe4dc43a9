#include "vorlat/norms.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

#include "vorlat/errors.hpp"

namespace vorlat {

NormSpec NormSpec::lp(double p) {
  if (!(p >= 1.0)) throw InputError("lp norm requires p >= 1, got p = " + std::to_string(p));
  return NormSpec{p, false};
}

NormSpec NormSpec::linf() { return NormSpec{std::numeric_limits<double>::infinity(), true}; }

NormSpec NormSpec::parse(const std::string& text) {
  if (text.size() < 2 || text[0] != 'l')
    throw InputError("norm spec must look like l<p> or linf, got '" + text + "'");
  const std::string body = text.substr(1);
  if (body == "inf") return linf();
  char* end = nullptr;
  const double p = std::strtod(body.c_str(), &end);
  if (end == nullptr || *end != '\0' || body.empty())
    throw InputError("cannot parse norm exponent in '" + text + "'");
  if (std::isnan(p) || std::isinf(p)) throw InputError("norm exponent must be finite; use linf");
  if (!(p >= 1.0)) throw InputError("l<p> requires p >= 1, got '" + text + "'");
  return NormSpec{p, false};
}

std::string NormSpec::str() const {
  if (is_inf) return "linf";
  if (p == std::floor(p) && std::fabs(p) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "l%.0f", p);
    return buf;
  }
  // Shortest decimal that round-trips.
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, p);
    if (std::strtod(buf, nullptr) == p) break;
  }
  return std::string("l") + buf;
}

double power_sum_root(const NormSpec& norm, double s) {
  if (norm.is_inf || norm.p == 1.0) return s;
  if (norm.p == 2.0) return std::sqrt(s);
  if (norm.p == 3.0) return std::cbrt(s);
  if (norm.p == 1.5) return std::cbrt(s * s);  // s^(2/3)
  return std::pow(s, 1.0 / norm.p);
}

double norm_eval(const NormSpec& norm, const Eigen::VectorXd& x) {
  return power_sum_root(norm, kernels::power_sum(norm.pkind(), x.data(),
                                                 static_cast<std::size_t>(x.size())));
}

double bisector_margin(const NormSpec& norm, const Eigen::VectorXd& v, const Eigen::VectorXd& x) {
  if (v.size() != x.size())
    throw DimensionMismatch("bisector_margin: v and x dimensions differ");
  const Eigen::VectorXd d = x - v;
  const auto pk = norm.pkind();
  const std::size_t n = static_cast<std::size_t>(x.size());
  return power_sum_root(norm, kernels::power_sum(pk, x.data(), n)) -
         power_sum_root(norm, kernels::power_sum(pk, d.data(), n));
}

std::optional<double> ray_bisector_crossing(const NormSpec& norm, const Eigen::VectorXd& v,
                                            const Eigen::VectorXd& x0, const Eigen::VectorXd& dir,
                                            double t_max, int samples) {
  if (samples < 2) throw InputError("ray_bisector_crossing: need at least 2 samples");
  if (!(t_max > 0.0)) throw InputError("ray_bisector_crossing: t_max must be positive");
  const auto margin_at = [&](double t) { return bisector_margin(norm, v, x0 + t * dir); };
  const double tol = 1e-12 * std::max(1.0, t_max);

  double prev_t = 0.0;
  double prev_m = margin_at(0.0);
  if (prev_m == 0.0) return 0.0;
  for (int i = 1; i <= samples; ++i) {
    const double t = t_max * static_cast<double>(i) / samples;
    const double m = margin_at(t);
    if (m == 0.0) return t;
    if ((prev_m < 0.0) != (m < 0.0)) {
      // Bisect [prev_t, t].
      double lo = prev_t, hi = t, mlo = prev_m;
      while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double mm = margin_at(mid);
        if (mm == 0.0) return mid;
        if ((mm < 0.0) == (mlo < 0.0)) {
          lo = mid;
          mlo = mm;
        } else {
          hi = mid;
        }
      }
      return 0.5 * (lo + hi);
    }
    prev_t = t;
    prev_m = m;
  }
  return std::nullopt;
}

PlaneDistanceL3 distance_to_plane_l3(double C, const Eigen::Vector3d& v) {
  const double rt2 = std::sqrt(2.0);
  const double gap = rt2 * C - v[0] - v[2];
  PlaneDistanceL3 out;
  const double a = std::fabs(gap);
  out.cubed_distance = 0.25 * ((a * a) * a);
  // closest = R_y((v1 - v3)/sqrt2, v2, C)
  const double s_over = (v[0] - v[2]) * 0.5;  // ((v1-v3)/sqrt2)/sqrt2
  out.closest_point = Eigen::Vector3d(s_over + C / rt2, v[1], -s_over + C / rt2);
  return out;
}

}  // namespace vorlat
