#pragma once

// Internal declarations shared between the backend translation units and the
// dispatch table. Not installed.

#include <cstddef>

#if defined(FHP_HAVE_AVX2)
namespace fhp::kernels::avx2 {
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
}  // namespace fhp::kernels::avx2
#endif

#if defined(FHP_HAVE_NEON)
namespace fhp::kernels::neon {
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
}  // namespace fhp::kernels::neon
#endif
