// Runtime backend selection. The table is resolved once: the FHP_KERNELS
// environment variable wins if set, otherwise the best backend the CPU
// supports. force_backend swaps the table for tests.

#include "fhp/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kernels_backends.hpp"

namespace fhp::kernels {

namespace {

struct OpsTable {
  Backend backend;
  void (*mul)(const double*, const double*, double*, std::size_t);
  void (*sub)(const double*, const double*, double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  double (*weighted_dot)(const double*, const double*, const double*, std::size_t);
  double (*sum)(const double*, std::size_t);
  void (*tikhonov)(const double*, const double*, const double*, double*, std::size_t);
  void (*shrink)(const double*, const double*, const double*, const double*, double*,
                 std::size_t);
};

constexpr OpsTable kScalarTable = {
    Backend::Scalar, scalar::mul,          scalar::sub, scalar::axpy,
    scalar::dot,     scalar::weighted_dot, scalar::sum, scalar::tikhonov_apply,
    scalar::shrink_apply,
};

#if defined(FHP_HAVE_AVX2)
constexpr OpsTable kAvx2Table = {
    Backend::Avx2, avx2::mul,          avx2::sub, avx2::axpy,
    avx2::dot,     avx2::weighted_dot, avx2::sum, avx2::tikhonov_apply,
    avx2::shrink_apply,
};
#endif

#if defined(FHP_HAVE_NEON)
constexpr OpsTable kNeonTable = {
    Backend::Neon, neon::mul,          neon::sub, neon::axpy,
    neon::dot,     neon::weighted_dot, neon::sum, neon::tikhonov_apply,
    neon::shrink_apply,
};
#endif

const OpsTable* table_for(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return &kScalarTable;
    case Backend::Avx2:
#if defined(FHP_HAVE_AVX2)
      if (__builtin_cpu_supports("avx2")) return &kAvx2Table;
#endif
      return nullptr;
    case Backend::Neon:
#if defined(FHP_HAVE_NEON)
      return &kNeonTable;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

const OpsTable* resolve() {
  if (const char* env = std::getenv("FHP_KERNELS")) {
    std::string want(env);
    if (want == "scalar") return &kScalarTable;
    if (want == "avx2") {
      if (const OpsTable* t = table_for(Backend::Avx2)) return t;
    }
    if (want == "neon") {
      if (const OpsTable* t = table_for(Backend::Neon)) return t;
    }
    // Unknown or unavailable request: fall through to autodetection.
  }
#if defined(FHP_HAVE_AVX2)
  if (__builtin_cpu_supports("avx2")) return &kAvx2Table;
#endif
#if defined(FHP_HAVE_NEON)
  return &kNeonTable;
#endif
  return &kScalarTable;
}

const OpsTable* g_ops = nullptr;

const OpsTable& ops() {
  if (!g_ops) g_ops = resolve();
  return *g_ops;
}

}  // namespace

Backend active_backend() { return ops().backend; }

bool backend_available(Backend b) { return table_for(b) != nullptr; }

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return "scalar";
    case Backend::Avx2:
      return "avx2";
    case Backend::Neon:
      return "neon";
  }
  return "unknown";
}

void force_backend(Backend b) {
  const OpsTable* t = table_for(b);
  if (!t) {
    throw std::invalid_argument("kernel backend not available: " +
                                std::string(backend_name(b)));
  }
  g_ops = t;
}

void mul(const double* a, const double* b, double* dst, std::size_t n) {
  ops().mul(a, b, dst, n);
}
void sub(const double* a, const double* b, double* dst, std::size_t n) {
  ops().sub(a, b, dst, n);
}
void axpy(double alpha, const double* x, double* y, std::size_t n) {
  ops().axpy(alpha, x, y, n);
}
double dot(const double* a, const double* b, std::size_t n) { return ops().dot(a, b, n); }
double weighted_dot(const double* w, const double* a, const double* b, std::size_t n) {
  return ops().weighted_dot(w, a, b, n);
}
double sum(const double* a, std::size_t n) { return ops().sum(a, n); }
void tikhonov_apply(const double* s, const double* weight, const double* x, double* dst,
                    std::size_t n) {
  ops().tikhonov(s, weight, x, dst, n);
}
void shrink_apply(const double* s, const double* vn, const double* vs, const double* x,
                  double* dst, std::size_t n) {
  ops().shrink(s, vn, vs, x, dst, n);
}

}  // namespace fhp::kernels
