#include <arm_neon.h>

#include <cstddef>

#include "kernels_internal.hpp"

namespace vorlat::kernels::detail {

namespace {

// Two points per iteration (float64x2).  Same per-lane operation order as
// the scalar kernel; tail handled by the scalar kernel.
template <PCase PC>
void batch_impl(PKind p, const double* x, const double* pts, std::size_t stride,
                std::size_t count, std::size_t dim, double* out) {
  std::size_t i = 0;
  for (; i + 2 <= count; i += 2) {
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t j = 0; j < dim; ++j) {
      const float64x2_t xj = vdupq_n_f64(x[j]);
      const float64x2_t pj = vld1q_f64(pts + j * stride + i);
      const float64x2_t u = vabsq_f64(vsubq_f64(xj, pj));
      if constexpr (PC == PCase::one) {
        acc = vaddq_f64(acc, u);
      } else if constexpr (PC == PCase::three_halves) {
        acc = vaddq_f64(acc, vmulq_f64(u, vsqrtq_f64(u)));
      } else if constexpr (PC == PCase::two) {
        acc = vaddq_f64(acc, vmulq_f64(u, u));
      } else if constexpr (PC == PCase::three) {
        acc = vaddq_f64(acc, vmulq_f64(vmulq_f64(u, u), u));
      } else {
        acc = vmaxq_f64(acc, u);
      }
    }
    vst1q_f64(out + i, acc);
  }
  if (i < count) {
    power_sum_batch_scalar(p, x, pts + i, stride, count - i, dim, out + i);
  }
}

}  // namespace

void power_sum_batch_neon(PKind p, const double* x, const double* pts, std::size_t stride,
                          std::size_t count, std::size_t dim, double* out) {
  switch (classify(p)) {
    case PCase::one:
      batch_impl<PCase::one>(p, x, pts, stride, count, dim, out);
      break;
    case PCase::three_halves:
      batch_impl<PCase::three_halves>(p, x, pts, stride, count, dim, out);
      break;
    case PCase::two:
      batch_impl<PCase::two>(p, x, pts, stride, count, dim, out);
      break;
    case PCase::three:
      batch_impl<PCase::three>(p, x, pts, stride, count, dim, out);
      break;
    case PCase::inf:
      batch_impl<PCase::inf>(p, x, pts, stride, count, dim, out);
      break;
    case PCase::general:
      power_sum_batch_scalar(p, x, pts, stride, count, dim, out);
      break;
  }
}

}  // namespace vorlat::kernels::detail
