// AVX2 kernels: 4-wide double lanes with a scalar tail. Elementwise kernels
// apply the exact operation sequence of the scalar reference (mul/add/div,
// no FMA contraction), so their results are bit-identical to it. Reductions
// use a vector accumulator and therefore a different association order.

#include "kernels_backends.hpp"

#if defined(FHP_HAVE_AVX2)

#include <immintrin.h>

namespace fhp::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d shuf = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

}  // namespace

void mul(const double* a, const double* b, double* dst, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d va = _mm256_loadu_pd(a + i);
    __m256d vb = _mm256_loadu_pd(b + i);
    _mm256_storeu_pd(dst + i, _mm256_mul_pd(va, vb));
  }
  for (; i < n; ++i) dst[i] = a[i] * b[i];
}

void sub(const double* a, const double* b, double* dst, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d va = _mm256_loadu_pd(a + i);
    __m256d vb = _mm256_loadu_pd(b + i);
    _mm256_storeu_pd(dst + i, _mm256_sub_pd(va, vb));
  }
  for (; i < n; ++i) dst[i] = a[i] - b[i];
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vx = _mm256_loadu_pd(x + i);
    __m256d vy = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(y + i, _mm256_add_pd(vy, _mm256_mul_pd(va, vx)));
  }
  for (; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d va = _mm256_loadu_pd(a + i);
    __m256d vb = _mm256_loadu_pd(b + i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(va, vb));
  }
  double r = hsum(acc);
  for (; i < n; ++i) r += a[i] * b[i];
  return r;
}

double weighted_dot(const double* w, const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vw = _mm256_loadu_pd(w + i);
    __m256d va = _mm256_loadu_pd(a + i);
    __m256d vb = _mm256_loadu_pd(b + i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(vw, _mm256_mul_pd(va, vb)));
  }
  double r = hsum(acc);
  for (; i < n; ++i) r += w[i] * (a[i] * b[i]);
  return r;
}

double sum(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + i));
  double r = hsum(acc);
  for (; i < n; ++i) r += a[i];
  return r;
}

void tikhonov_apply(const double* s, const double* weight, const double* x, double* dst,
                    std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vs = _mm256_loadu_pd(s + i);
    __m256d vw = _mm256_loadu_pd(weight + i);
    __m256d vx = _mm256_loadu_pd(x + i);
    __m256d t = _mm256_mul_pd(vs, vs);
    t = _mm256_mul_pd(t, vw);
    t = _mm256_add_pd(one, t);
    _mm256_storeu_pd(dst + i, _mm256_div_pd(vx, t));
  }
  for (; i < n; ++i) {
    double t = s[i] * s[i];
    t = t * weight[i];
    t = 1.0 + t;
    dst[i] = x[i] / t;
  }
}

void shrink_apply(const double* s, const double* vn, const double* vs, const double* x,
                  double* dst, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vsv = _mm256_loadu_pd(s + i);
    __m256d vnv = _mm256_loadu_pd(vn + i);
    __m256d vsv2 = _mm256_loadu_pd(vs + i);
    __m256d vx = _mm256_loadu_pd(x + i);
    __m256d t = _mm256_mul_pd(vsv, vsv);
    t = _mm256_mul_pd(t, vnv);
    t = _mm256_add_pd(vsv2, t);
    __m256d q = _mm256_div_pd(vsv2, t);
    _mm256_storeu_pd(dst + i, _mm256_mul_pd(vx, q));
  }
  for (; i < n; ++i) {
    double t = s[i] * s[i];
    t = t * vn[i];
    t = vs[i] + t;
    double q = vs[i] / t;
    dst[i] = x[i] * q;
  }
}

}  // namespace fhp::kernels::avx2

#endif  // FHP_HAVE_AVX2
