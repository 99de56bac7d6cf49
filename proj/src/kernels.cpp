#include "lsattack/kernels.hpp"

#include <stdexcept>

namespace lsattack::kernels {
namespace {

const Vtable* g_active = nullptr;
Backend g_backend = Backend::scalar;

void ensure_initialized() {
  if (g_active) return;
  g_backend = detect_backend();
  g_active = g_backend == Backend::avx2 ? avx2_vtable() : &scalar_vtable();
}

}  // namespace

const char* backend_name(Backend b) {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

bool avx2_supported() { return avx2_vtable() != nullptr; }

Backend detect_backend() {
  return avx2_supported() ? Backend::avx2 : Backend::scalar;
}

Backend active_backend() {
  ensure_initialized();
  return g_backend;
}

void set_backend(Backend b) {
  if (b == Backend::avx2) {
    const Vtable* t = avx2_vtable();
    if (!t) throw std::invalid_argument("avx2 backend not supported on this CPU");
    g_active = t;
  } else {
    g_active = &scalar_vtable();
  }
  g_backend = b;
}

void signed_step(const double* x, const double* s, double step, double* y,
                 std::size_t n) {
  ensure_initialized();
  g_active->signed_step(x, s, step, y, n);
}

void signed_step_clamped(const double* x, const double* s, double step,
                         double lo, double hi, double* y, std::size_t n) {
  ensure_initialized();
  g_active->signed_step_clamped(x, s, step, lo, hi, y, n);
}

double dot(const double* a, const double* b, std::size_t n) {
  ensure_initialized();
  return g_active->dot(a, b, n);
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  ensure_initialized();
  g_active->axpy(a, x, y, n);
}

void gemv(const double* w, const double* x, const double* bias, double* out,
          std::size_t rows, std::size_t cols) {
  ensure_initialized();
  g_active->gemv(w, x, bias, out, rows, cols);
}

void gemv_transposed(const double* w, const double* g, double* out,
                     std::size_t rows, std::size_t cols) {
  ensure_initialized();
  g_active->gemv_transposed(w, g, out, rows, cols);
}

std::size_t count_vertex(const double* y, const double* x, double eps,
                         double tol, std::size_t n) {
  ensure_initialized();
  return g_active->count_vertex(y, x, eps, tol, n);
}

}  // namespace lsattack::kernels
