#pragma once

#include <cmath>
#include <cstddef>

#include "vorlat/kernels.hpp"

namespace vorlat::kernels::detail {

enum class PCase { one, three_halves, two, three, inf, general };

inline PCase classify(PKind p) {
  if (p.is_inf) return PCase::inf;
  if (p.p == 1.0) return PCase::one;
  if (p.p == 1.5) return PCase::three_halves;
  if (p.p == 2.0) return PCase::two;
  if (p.p == 3.0) return PCase::three;
  return PCase::general;
}

// Raw batched kernel signature.  Coordinate j of point i sits at
// pts[j * stride + i]; `count` points are processed.  Every implementation
// must accumulate each point's sum in coordinate order with plain IEEE
// mul/add/sqrt so that scalar and SIMD levels agree bitwise.
using BatchFn = void (*)(PKind p, const double* x, const double* pts, std::size_t stride,
                         std::size_t count, std::size_t dim, double* out);

void power_sum_batch_scalar(PKind p, const double* x, const double* pts, std::size_t stride,
                            std::size_t count, std::size_t dim, double* out);
#if defined(VORLAT_HAVE_AVX2)
void power_sum_batch_avx2(PKind p, const double* x, const double* pts, std::size_t stride,
                          std::size_t count, std::size_t dim, double* out);
#endif
#if defined(VORLAT_HAVE_NEON)
void power_sum_batch_neon(PKind p, const double* x, const double* pts, std::size_t stride,
                          std::size_t count, std::size_t dim, double* out);
#endif

}  // namespace vorlat::kernels::detail
