// AVX2 kernel variants. Built with -mavx2 -mfma on x86; on other targets this
// file compiles to a stub that reports the backend as unavailable.
//
// Elementwise kernels use mul+add (not fmadd) so they round exactly like the
// scalar reference. Reductions use fmadd with 4-lane accumulators and are
// only tolerance-equivalent.
#include "lsattack/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace lsattack::kernels {
namespace {

void signed_step_avx2(const double* x, const double* s, double step, double* y,
                      std::size_t n) {
  const __m256d vstep = _mm256_set1_pd(step);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vx = _mm256_loadu_pd(x + i);
    __m256d vs = _mm256_loadu_pd(s + i);
    _mm256_storeu_pd(y + i, _mm256_add_pd(vx, _mm256_mul_pd(vstep, vs)));
  }
  for (; i < n; ++i) y[i] = x[i] + step * s[i];
}

void signed_step_clamped_avx2(const double* x, const double* s, double step,
                              double lo, double hi, double* y, std::size_t n) {
  const __m256d vstep = _mm256_set1_pd(step);
  const __m256d vlo = _mm256_set1_pd(lo);
  const __m256d vhi = _mm256_set1_pd(hi);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vx = _mm256_loadu_pd(x + i);
    __m256d vs = _mm256_loadu_pd(s + i);
    __m256d v = _mm256_add_pd(vx, _mm256_mul_pd(vstep, vs));
    v = _mm256_min_pd(_mm256_max_pd(v, vlo), vhi);
    _mm256_storeu_pd(y + i, v);
  }
  for (; i < n; ++i) {
    double v = x[i] + step * s[i];
    y[i] = std::min(std::max(v, lo), hi);
  }
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d va = _mm256_loadu_pd(a + i);
    __m256d vb = _mm256_loadu_pd(b + i);
    acc = _mm256_fmadd_pd(va, vb, acc);
  }
  __m128d lo = _mm256_castpd256_pd128(acc);
  __m128d hi = _mm256_extractf128_pd(acc, 1);
  __m128d sum2 = _mm_add_pd(lo, hi);
  double result = _mm_cvtsd_f64(_mm_add_sd(sum2, _mm_unpackhi_pd(sum2, sum2)));
  for (; i < n; ++i) result += a[i] * b[i];
  return result;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    __m256d vx = _mm256_loadu_pd(x + i);
    _mm256_storeu_pd(y + i, _mm256_add_pd(vy, _mm256_mul_pd(va, vx)));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void gemv_avx2(const double* w, const double* x, const double* bias,
               double* out, std::size_t rows, std::size_t cols) {
  for (std::size_t r = 0; r < rows; ++r) {
    double acc = dot_avx2(w + r * cols, x, cols);
    out[r] = bias ? acc + bias[r] : acc;
  }
}

void gemv_transposed_avx2(const double* w, const double* g, double* out,
                          std::size_t rows, std::size_t cols) {
  std::fill(out, out + cols, 0.0);
  for (std::size_t r = 0; r < rows; ++r) axpy_avx2(g[r], w + r * cols, out, cols);
}

std::size_t count_vertex_avx2(const double* y, const double* x, double eps,
                              double tol, std::size_t n) {
  const __m256d veps = _mm256_set1_pd(eps);
  const __m256d vtol = _mm256_set1_pd(tol);
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  std::size_t hits = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d diff = _mm256_sub_pd(_mm256_loadu_pd(y + i), _mm256_loadu_pd(x + i));
    __m256d mag = _mm256_andnot_pd(sign_mask, diff);
    __m256d dev = _mm256_andnot_pd(sign_mask, _mm256_sub_pd(mag, veps));
    __m256d hit = _mm256_cmp_pd(dev, vtol, _CMP_LE_OQ);
    hits += static_cast<std::size_t>(__builtin_popcount(
        static_cast<unsigned>(_mm256_movemask_pd(hit))));
  }
  for (; i < n; ++i) {
    if (std::abs(std::abs(y[i] - x[i]) - eps) <= tol) ++hits;
  }
  return hits;
}

}  // namespace

const Vtable* avx2_vtable() {
  if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma"))
    return nullptr;
  static const Vtable table{
      signed_step_avx2,     signed_step_clamped_avx2, dot_avx2, axpy_avx2,
      gemv_avx2,            gemv_transposed_avx2,     count_vertex_avx2,
  };
  return &table;
}

}  // namespace lsattack::kernels

#else

namespace lsattack::kernels {

const Vtable* avx2_vtable() { return nullptr; }

}  // namespace lsattack::kernels

#endif
