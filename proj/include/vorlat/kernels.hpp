#pragma once

#include <cstddef>
#include <vector>

namespace vorlat::kernels {

// SIMD level selected at runtime.  The default is the best level the CPU
// supports among those compiled in; the environment variable VORLAT_SIMD
// (values: scalar, avx2, neon) forces a specific level, falling back to
// scalar if the requested level is unavailable.
enum class Level { scalar, avx2, neon };

Level active_level();
const char* level_name(Level lvl);
// Force a level (used by tests); returns the level actually in effect.
Level set_level(Level lvl);

// Exponent classification.  The batched kernels special-case the exponents
// that appear throughout (1, 1.5, 2, 3, inf); everything else goes through a
// scalar std::pow loop.  p = inf is encoded by is_inf, and the "power sum"
// is then the max of |.| instead of a sum, so that the min-reduction and
// root steps work uniformly.
struct PKind {
  double p = 2.0;
  bool is_inf = false;
};

// Block of points in structure-of-arrays layout: data[j*count + i] is
// coordinate j of point i.  This is the layout all batched kernels consume.
struct PointBlock {
  std::size_t count = 0;
  std::size_t dim = 0;
  std::vector<double> data;

  void assign(std::size_t count_, std::size_t dim_);
  // coordinate j of point i
  double& at(std::size_t i, std::size_t j) { return data[j * count + i]; }
  double at(std::size_t i, std::size_t j) const { return data[j * count + i]; }
};

// out[i] = sum_j |x[j] - pts(i,j)|^p   (max_j for p = inf)
void power_sum_batch(PKind p, const double* x, const PointBlock& pts, double* out);

// Single-point power sum: sum_j |x[j]|^p (max_j for inf).
double power_sum(PKind p, const double* x, std::size_t dim);

struct MinPowerSum {
  std::size_t index = 0;  // lowest index on ties
  double value = 0.0;
};

// min_i sum_j |x[j] - pts(i,j)|^p over the block.  Requires pts.count > 0.
MinPowerSum min_power_sum(PKind p, const double* x, const PointBlock& pts);

}  // namespace vorlat::kernels
