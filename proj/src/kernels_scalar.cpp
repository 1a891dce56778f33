// Scalar reference kernels. Compiled with -ffp-contract=off so the SIMD
// variants, which use explicit mul/add/div intrinsics, round identically on
// the elementwise operations.

#include "fhp/kernels.hpp"

namespace fhp::kernels::scalar {

void mul(const double* a, const double* b, double* dst, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] * b[i];
}

void sub(const double* a, const double* b, double* dst, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] - b[i];
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double weighted_dot(const double* w, const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += w[i] * (a[i] * b[i]);
  return acc;
}

double sum(const double* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i];
  return acc;
}

void tikhonov_apply(const double* s, const double* weight, const double* x, double* dst,
                    std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double t = s[i] * s[i];
    t = t * weight[i];
    t = 1.0 + t;
    dst[i] = x[i] / t;
  }
}

void shrink_apply(const double* s, const double* vn, const double* vs, const double* x,
                  double* dst, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double t = s[i] * s[i];
    t = t * vn[i];
    t = vs[i] + t;
    double q = vs[i] / t;
    dst[i] = x[i] * q;
  }
}

}  // namespace fhp::kernels::scalar
