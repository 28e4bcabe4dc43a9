#include <algorithm>
#include <cmath>

#include "kernels_internal.hpp"

namespace vorlat::kernels::detail {

namespace {

template <PCase PC>
void batch_impl(double p, const double* x, const double* pts, std::size_t stride,
                std::size_t count, std::size_t dim, double* out) {
  for (std::size_t i = 0; i < count; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      const double u = std::fabs(x[j] - pts[j * stride + i]);
      if constexpr (PC == PCase::one) {
        acc += u;
      } else if constexpr (PC == PCase::three_halves) {
        acc += u * std::sqrt(u);
      } else if constexpr (PC == PCase::two) {
        acc += u * u;
      } else if constexpr (PC == PCase::three) {
        acc += (u * u) * u;
      } else if constexpr (PC == PCase::inf) {
        acc = std::max(acc, u);
      } else {
        acc += std::pow(u, p);
      }
    }
    out[i] = acc;
  }
}

}  // namespace

void power_sum_batch_scalar(PKind p, const double* x, const double* pts, std::size_t stride,
                            std::size_t count, std::size_t dim, double* out) {
  switch (classify(p)) {
    case PCase::one:
      batch_impl<PCase::one>(p.p, x, pts, stride, count, dim, out);
      break;
    case PCase::three_halves:
      batch_impl<PCase::three_halves>(p.p, x, pts, stride, count, dim, out);
      break;
    case PCase::two:
      batch_impl<PCase::two>(p.p, x, pts, stride, count, dim, out);
      break;
    case PCase::three:
      batch_impl<PCase::three>(p.p, x, pts, stride, count, dim, out);
      break;
    case PCase::inf:
      batch_impl<PCase::inf>(p.p, x, pts, stride, count, dim, out);
      break;
    case PCase::general:
      batch_impl<PCase::general>(p.p, x, pts, stride, count, dim, out);
      break;
  }
}

}  // namespace vorlat::kernels::detail
