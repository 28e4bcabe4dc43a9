#include "vorlat/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>

#include "kernels_internal.hpp"

namespace vorlat::kernels {

using detail::BatchFn;

namespace {

bool level_available(Level lvl) {
  switch (lvl) {
    case Level::scalar:
      return true;
    case Level::avx2:
#if defined(VORLAT_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") != 0;
#else
      return false;
#endif
    case Level::neon:
#if defined(VORLAT_HAVE_NEON)
      return true;  // baseline on aarch64
#else
      return false;
#endif
  }
  return false;
}

Level detect_level() {
  // Environment override first (VORLAT_SIMD=scalar|avx2|neon), then the best
  // available level.
  if (const char* env = std::getenv("VORLAT_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return Level::scalar;
    if (std::strcmp(env, "avx2") == 0 && level_available(Level::avx2)) return Level::avx2;
    if (std::strcmp(env, "neon") == 0 && level_available(Level::neon)) return Level::neon;
    return Level::scalar;
  }
  if (level_available(Level::avx2)) return Level::avx2;
  if (level_available(Level::neon)) return Level::neon;
  return Level::scalar;
}

BatchFn batch_fn_for(Level lvl) {
  switch (lvl) {
#if defined(VORLAT_HAVE_AVX2)
    case Level::avx2:
      return detail::power_sum_batch_avx2;
#endif
#if defined(VORLAT_HAVE_NEON)
    case Level::neon:
      return detail::power_sum_batch_neon;
#endif
    default:
      return detail::power_sum_batch_scalar;
  }
}

std::atomic<int> g_level{-1};

Level current_level() {
  int lvl = g_level.load(std::memory_order_relaxed);
  if (lvl < 0) {
    lvl = static_cast<int>(detect_level());
    g_level.store(lvl, std::memory_order_relaxed);
  }
  return static_cast<Level>(lvl);
}

}  // namespace

Level active_level() { return current_level(); }

Level set_level(Level lvl) {
  if (!level_available(lvl)) lvl = Level::scalar;
  g_level.store(static_cast<int>(lvl), std::memory_order_relaxed);
  return lvl;
}

const char* level_name(Level lvl) {
  switch (lvl) {
    case Level::scalar:
      return "scalar";
    case Level::avx2:
      return "avx2";
    case Level::neon:
      return "neon";
  }
  return "?";
}

void PointBlock::assign(std::size_t count_, std::size_t dim_) {
  count = count_;
  dim = dim_;
  data.assign(count_ * dim_, 0.0);
}

void power_sum_batch(PKind p, const double* x, const PointBlock& pts, double* out) {
  if (pts.count == 0) return;
  batch_fn_for(current_level())(p, x, pts.data.data(), pts.count, pts.count, pts.dim, out);
}

double power_sum(PKind p, const double* x, std::size_t dim) {
  // Same accumulation sequence as the batched kernels with a zero block.
  double acc = 0.0;
  switch (detail::classify(p)) {
    case detail::PCase::one:
      for (std::size_t j = 0; j < dim; ++j) acc += std::fabs(x[j]);
      return acc;
    case detail::PCase::three_halves:
      for (std::size_t j = 0; j < dim; ++j) {
        const double u = std::fabs(x[j]);
        acc += u * std::sqrt(u);
      }
      return acc;
    case detail::PCase::two:
      for (std::size_t j = 0; j < dim; ++j) {
        const double u = std::fabs(x[j]);
        acc += u * u;
      }
      return acc;
    case detail::PCase::three:
      for (std::size_t j = 0; j < dim; ++j) {
        const double u = std::fabs(x[j]);
        acc += (u * u) * u;
      }
      return acc;
    case detail::PCase::inf:
      for (std::size_t j = 0; j < dim; ++j) acc = std::max(acc, std::fabs(x[j]));
      return acc;
    case detail::PCase::general:
      for (std::size_t j = 0; j < dim; ++j) acc += std::pow(std::fabs(x[j]), p.p);
      return acc;
  }
  return acc;
}

MinPowerSum min_power_sum(PKind p, const double* x, const PointBlock& pts) {
  constexpr std::size_t kChunk = 1024;
  double buf[kChunk];
  MinPowerSum best{0, std::numeric_limits<double>::infinity()};
  const BatchFn fn = batch_fn_for(current_level());
  for (std::size_t off = 0; off < pts.count; off += kChunk) {
    const std::size_t c = std::min(kChunk, pts.count - off);
    fn(p, x, pts.data.data() + off, pts.count, c, pts.dim, buf);
    for (std::size_t i = 0; i < c; ++i) {
      if (buf[i] < best.value) {
        best.value = buf[i];
        best.index = off + i;
      }
    }
  }
  return best;
}

}  // namespace vorlat::kernels
