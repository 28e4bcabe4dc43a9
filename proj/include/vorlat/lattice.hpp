#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "vorlat/norms.hpp"

namespace vorlat {

// A lattice point: integer coefficients z and real coordinates B*z.
struct LatticeVector {
  Eigen::VectorXi coeffs;
  Eigen::VectorXd coords;
};

bool coeffs_less(const Eigen::VectorXi& a, const Eigen::VectorXi& b);

// Full-rank lattice basis given by columns.  Construction validates shape
// (square, n >= 1), non-singularity (|det| >= 1e-10 * prod of column l2
// norms) and conditioning (sigma_max/sigma_min <= 1e8).
class Basis {
 public:
  static Basis from_columns(const Eigen::MatrixXd& columns);

  int dim() const { return static_cast<int>(mat_.cols()); }
  const Eigen::MatrixXd& matrix() const { return mat_; }
  const Eigen::MatrixXd& gram() const { return gram_; }  // B^T B, cached
  double det_abs() const { return det_abs_; }

  Eigen::VectorXd coords_of(const Eigen::VectorXi& z) const;
  // Solve B y = x (exact up to conditioning; basis is full rank).
  Eigen::VectorXd solve(const Eigen::VectorXd& x) const;

 private:
  Basis() = default;
  Eigen::MatrixXd mat_, gram_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  double det_abs_ = 0.0;
};

// All lattice vectors with ||B z - center||_norm <= radius + 1e-9, complete
// via Fincke-Pohst enumeration of the covering euclidean ellipsoid
// (||y||_2 <= n^(1/2-1/p) ||y||_p for p >= 2, ||y||_2 <= ||y||_p for p <= 2).
// Output sorted lexicographically by coefficient vector.  Throws
// BudgetExceeded when more than `budget` candidates would be visited.
std::vector<LatticeVector> enumerate_in_ball(const Basis& basis, const NormSpec& norm,
                                             const Eigen::VectorXd& center, double radius,
                                             std::int64_t budget = 10'000'000);

struct FirstMinimum {
  double value = 0.0;
  LatticeVector witness;
};

// Shortest nonzero vector under the norm (enumeration radius: the smallest
// basis-column norm, which always contains a nonzero vector).  The witness
// is sign-normalized (first nonzero coefficient positive), lexicographically
// smallest among minimizers.
FirstMinimum first_minimum(const Basis& basis, const NormSpec& norm,
                           std::int64_t budget = 10'000'000);

// mu_hat = (1/2) sum_i ||b_i||_norm, a rigorous covering radius upper bound:
// rounding coefficients moves any point by at most (1/2) sum ||b_i||.
double covering_radius_upper(const Basis& basis, const NormSpec& norm);

struct LatticeParams {
  double lambda1 = 0.0;
  LatticeVector lambda1_witness;
  double mu_upper = 0.0;
};

LatticeParams compute_params(const Basis& basis, const NormSpec& norm,
                             std::int64_t budget = 10'000'000);

}  // namespace vorlat
