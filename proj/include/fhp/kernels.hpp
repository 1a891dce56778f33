#pragma once

// Data-parallel kernels used by the spectral operators. Every kernel has a
// scalar reference implementation plus SIMD variants (AVX2 on x86-64, NEON on
// aarch64) selected once at runtime. Elementwise kernels are bit-identical
// across backends; reductions may differ in association order and are
// equivalence-tested against the scalar reference under a relative tolerance.

#include <cstddef>
#include <string_view>

namespace fhp::kernels {

enum class Backend { Scalar, Avx2, Neon };

// Backend chosen for this process (resolved on first use, overridable with
// the FHP_KERNELS environment variable: scalar | avx2 | neon).
Backend active_backend();
bool backend_available(Backend b);
std::string_view backend_name(Backend b);

// Force a backend for the rest of the process. Throws std::invalid_argument
// if the backend was not compiled in or the CPU lacks it. Not safe to call
// concurrently with kernel use; intended for tests and benchmarks.
void force_backend(Backend b);

// dst[i] = a[i] * b[i]
void mul(const double* a, const double* b, double* dst, std::size_t n);

// dst[i] = a[i] - b[i]
void sub(const double* a, const double* b, double* dst, std::size_t n);

// y[i] += alpha * x[i]
void axpy(double alpha, const double* x, double* y, std::size_t n);

// sum_i a[i] * b[i]
double dot(const double* a, const double* b, std::size_t n);

// sum_i w[i] * a[i] * b[i]
double weighted_dot(const double* w, const double* a, const double* b, std::size_t n);

// sum_i a[i]
double sum(const double* a, std::size_t n);

// dst[i] = x[i] / (1 + s[i]^2 * weight[i])   (Tikhonov filter factor)
void tikhonov_apply(const double* s, const double* weight, const double* x, double* dst,
                    std::size_t n);

// dst[i] = x[i] * vs[i] / (vs[i] + s[i]^2 * vn[i])   (shrinkage toward zero;
// the stable form of 1/(1 + s^2 vn / vs), safe when vn/vs spans many orders)
void shrink_apply(const double* s, const double* vn, const double* vs, const double* x,
                  double* dst, std::size_t n);

// Scalar reference implementations, always available; the dispatch layer and
// the equivalence tests compare against these.
namespace scalar {
void mul(const double* a, const double* b, double* dst, std::size_t n);
void sub(const double* a, const double* b, double* dst, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
double weighted_dot(const double* w, const double* a, const double* b, std::size_t n);
double sum(const double* a, std::size_t n);
void tikhonov_apply(const double* s, const double* weight, const double* x, double* dst,
                    std::size_t n);
void shrink_apply(const double* s, const double* vn, const double* vs, const double* x,
                  double* dst, std::size_t n);
}  // namespace scalar

}  // namespace fhp::kernels
