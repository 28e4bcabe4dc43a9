#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>

#include "vorlat/kernels.hpp"

namespace vorlat {

// An lp norm, p in [1, inf].  Serialized as "l<p>" ("l1", "l2", "l1.5",
// "linf").  p < 1 is not a norm and is rejected at parse/construction time.
struct NormSpec {
  double p = 2.0;
  bool is_inf = false;

  static NormSpec lp(double p);
  static NormSpec linf();
  static NormSpec parse(const std::string& text);
  std::string str() const;

  bool strictly_convex() const { return !is_inf && p > 1.0; }
  bool smooth() const { return !is_inf && p > 1.0; }
  kernels::PKind pkind() const { return kernels::PKind{p, is_inf}; }
};

// s^(1/p) with stable special cases for p in {1, 1.5, 2, 3, inf}.
double power_sum_root(const NormSpec& norm, double s);

double norm_eval(const NormSpec& norm, const Eigen::VectorXd& x);

// ||x|| - ||x - v||.  Negative inside the open halfspace of 0, positive on
// the v side, zero on the bisector.
double bisector_margin(const NormSpec& norm, const Eigen::VectorXd& v, const Eigen::VectorXd& x);

// Smallest t in [0, t_max] with bisector_margin(norm, v, x0 + t*dir) == 0,
// located by uniform sampling followed by bisection on the bracketing
// interval (|t| resolved to ~1e-12).  nullopt when no sign change is found;
// absence of a crossing is a sampling statement, not a proof.
std::optional<double> ray_bisector_crossing(const NormSpec& norm, const Eigen::VectorXd& v,
                                            const Eigen::VectorXd& x0, const Eigen::VectorXd& dir,
                                            double t_max, int samples = 1024);

// Distance (cubed) from v to the plane E_C = R_y(R e1 + R e2 + C e3) under
// the l3 norm, where R_y is the fixed rotation
//   [ 1/sqrt2  0  1/sqrt2 ]
//   [    0     1     0    ]
//   [-1/sqrt2  0  1/sqrt2 ].
// Closed form: cubed distance = |sqrt2*C - v1 - v3|^3 / 4, attained at the
// unique closest point R_y((v1 - v3)/sqrt2, v2, C).
struct PlaneDistanceL3 {
  double cubed_distance = 0.0;
  Eigen::Vector3d closest_point = Eigen::Vector3d::Zero();
};

PlaneDistanceL3 distance_to_plane_l3(double C, const Eigen::Vector3d& v);

}  // namespace vorlat
