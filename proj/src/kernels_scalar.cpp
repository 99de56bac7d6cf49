#include "lsattack/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace lsattack::kernels {
namespace {

void signed_step_impl(const double* x, const double* s, double step, double* y,
                      std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + step * s[i];
}

void signed_step_clamped_impl(const double* x, const double* s, double step,
                              double lo, double hi, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double v = x[i] + step * s[i];
    y[i] = std::min(std::max(v, lo), hi);
  }
}

double dot_impl(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy_impl(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void gemv_impl(const double* w, const double* x, const double* bias,
               double* out, std::size_t rows, std::size_t cols) {
  for (std::size_t r = 0; r < rows; ++r) {
    double acc = dot_impl(w + r * cols, x, cols);
    out[r] = bias ? acc + bias[r] : acc;
  }
}

void gemv_transposed_impl(const double* w, const double* g, double* out,
                          std::size_t rows, std::size_t cols) {
  std::fill(out, out + cols, 0.0);
  for (std::size_t r = 0; r < rows; ++r) axpy_impl(g[r], w + r * cols, out, cols);
}

std::size_t count_vertex_impl(const double* y, const double* x, double eps,
                              double tol, std::size_t n) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(std::abs(y[i] - x[i]) - eps) <= tol) ++hits;
  }
  return hits;
}

}  // namespace

const Vtable& scalar_vtable() {
  static const Vtable table{
      signed_step_impl,     signed_step_clamped_impl, dot_impl, axpy_impl,
      gemv_impl,            gemv_transposed_impl,     count_vertex_impl,
  };
  return table;
}

}  // namespace lsattack::kernels
