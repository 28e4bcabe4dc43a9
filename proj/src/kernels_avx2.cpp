#include <immintrin.h>

#include <cstddef>

#include "kernels_internal.hpp"

namespace vorlat::kernels::detail {

namespace {

// Four points per iteration; each lane accumulates its point's sum in the
// same coordinate order and with the same IEEE operations as the scalar
// kernel, so results match the scalar level bitwise.  The tail goes through
// the scalar kernel.
template <PCase PC>
void batch_impl(PKind p, const double* x, const double* pts, std::size_t stride,
                std::size_t count, std::size_t dim, double* out) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t j = 0; j < dim; ++j) {
      const __m256d xj = _mm256_set1_pd(x[j]);
      const __m256d pj = _mm256_loadu_pd(pts + j * stride + i);
      const __m256d u = _mm256_andnot_pd(sign_mask, _mm256_sub_pd(xj, pj));
      if constexpr (PC == PCase::one) {
        acc = _mm256_add_pd(acc, u);
      } else if constexpr (PC == PCase::three_halves) {
        acc = _mm256_add_pd(acc, _mm256_mul_pd(u, _mm256_sqrt_pd(u)));
      } else if constexpr (PC == PCase::two) {
        acc = _mm256_add_pd(acc, _mm256_mul_pd(u, u));
      } else if constexpr (PC == PCase::three) {
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_mul_pd(u, u), u));
      } else {
        acc = _mm256_max_pd(acc, u);
      }
    }
    _mm256_storeu_pd(out + i, acc);
  }
  if (i < count) {
    power_sum_batch_scalar(p, x, pts + i, stride, count - i, dim, out + i);
  }
}

}  // namespace

void power_sum_batch_avx2(PKind p, const double* x, const double* pts, std::size_t stride,
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
      // No vector pow; the scalar loop is the reference for general p.
      power_sum_batch_scalar(p, x, pts, stride, count, dim, out);
      break;
  }
}

}  // namespace vorlat::kernels::detail
