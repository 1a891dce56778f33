// NEON kernels for aarch64: 2-wide double lanes with a scalar tail. Same
// operation ordering discipline as the AVX2 backend.

#include "kernels_backends.hpp"

#if defined(FHP_HAVE_NEON)

#include <arm_neon.h>

namespace fhp::kernels::neon {

void mul(const double* a, const double* b, double* dst, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(dst + i, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  }
  for (; i < n; ++i) dst[i] = a[i] * b[i];
}

void sub(const double* a, const double* b, double* dst, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(dst + i, vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  }
  for (; i < n; ++i) dst[i] = a[i] - b[i];
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t vy = vld1q_f64(y + i);
    float64x2_t vx = vld1q_f64(x + i);
    vst1q_f64(y + i, vaddq_f64(vy, vmulq_f64(va, vx)));
  }
  for (; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  }
  double r = vaddvq_f64(acc);
  for (; i < n; ++i) r += a[i] * b[i];
  return r;
}

double weighted_dot(const double* w, const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t prod = vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
    acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(w + i), prod));
  }
  double r = vaddvq_f64(acc);
  for (; i < n; ++i) r += w[i] * (a[i] * b[i]);
  return r;
}

double sum(const double* a, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vld1q_f64(a + i));
  double r = vaddvq_f64(acc);
  for (; i < n; ++i) r += a[i];
  return r;
}

void tikhonov_apply(const double* s, const double* weight, const double* x, double* dst,
                    std::size_t n) {
  const float64x2_t one = vdupq_n_f64(1.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t vs = vld1q_f64(s + i);
    float64x2_t t = vmulq_f64(vs, vs);
    t = vmulq_f64(t, vld1q_f64(weight + i));
    t = vaddq_f64(one, t);
    vst1q_f64(dst + i, vdivq_f64(vld1q_f64(x + i), t));
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
  for (; i + 2 <= n; i += 2) {
    float64x2_t vsv = vld1q_f64(s + i);
    float64x2_t t = vmulq_f64(vsv, vsv);
    t = vmulq_f64(t, vld1q_f64(vn + i));
    float64x2_t denom = vaddq_f64(vld1q_f64(vs + i), t);
    float64x2_t q = vdivq_f64(vld1q_f64(vs + i), denom);
    vst1q_f64(dst + i, vmulq_f64(vld1q_f64(x + i), q));
  }
  for (; i < n; ++i) {
    double t = s[i] * s[i];
    t = t * vn[i];
    t = vs[i] + t;
    double q = vs[i] / t;
    dst[i] = x[i] * q;
  }
}

}  // namespace fhp::kernels::neon

#endif  // FHP_HAVE_NEON
