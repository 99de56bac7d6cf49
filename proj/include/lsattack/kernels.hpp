// Arithmetic inner loops shared by the perturbation assembler and the dense
// nets. Every kernel has a scalar reference implementation and, on x86 with
// AVX2, a vectorized variant selected at runtime. Elementwise kernels are
// bit-identical across backends; reduction kernels (dot, gemv) may differ in
// the last bits because the summation order differs.
#pragma once

#include <cstddef>
#include <string>

namespace lsattack::kernels {

enum class Backend { scalar, avx2 };

const char* backend_name(Backend b);

// True when the running CPU (and this build) can execute the AVX2 kernels.
bool avx2_supported();

// Best backend the running CPU supports.
Backend detect_backend();

Backend active_backend();

// Selects the backend for all subsequent kernel calls. Throws
// std::invalid_argument when the requested backend is not supported.
// Not thread-safe; call before spawning parallel work.
void set_backend(Backend b);

// y[i] = x[i] + step * s[i], where s holds +/-1 signs.
void signed_step(const double* x, const double* s, double step, double* y,
                 std::size_t n);

// y[i] = clamp(x[i] + step * s[i], lo, hi).
void signed_step_clamped(const double* x, const double* s, double step,
                         double lo, double hi, double* y, std::size_t n);

double dot(const double* a, const double* b, std::size_t n);

// y[i] += a * x[i]
void axpy(double a, const double* x, double* y, std::size_t n);

// out = W x + bias. W is rows x cols, row-major. bias may be null.
void gemv(const double* w, const double* x, const double* bias, double* out,
          std::size_t rows, std::size_t cols);

// out = W^T g. W is rows x cols, row-major; g has length rows; out length cols.
void gemv_transposed(const double* w, const double* g, double* out,
                     std::size_t rows, std::size_t cols);

// Number of coordinates with | |y[i] - x[i]| - eps | <= tol.
std::size_t count_vertex(const double* y, const double* x, double eps,
                         double tol, std::size_t n);

// Backend function table. Scalar entries are always present; the avx2 table
// is null when unsupported.
struct Vtable {
  void (*signed_step)(const double*, const double*, double, double*,
                      std::size_t);
  void (*signed_step_clamped)(const double*, const double*, double, double,
                              double, double*, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*gemv)(const double*, const double*, const double*, double*,
               std::size_t, std::size_t);
  void (*gemv_transposed)(const double*, const double*, double*, std::size_t,
                          std::size_t);
  std::size_t (*count_vertex)(const double*, const double*, double, double,
                              std::size_t);
};

const Vtable& scalar_vtable();
const Vtable* avx2_vtable();  // null when not built or not supported

}  // namespace lsattack::kernels
