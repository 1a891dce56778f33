#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "fhp/harness.hpp"
#include "fhp/kernels.hpp"
#include "fhp/rng.hpp"

namespace {

namespace fk = fhp::kernels;

std::vector<double> random_vec(fhp::Rng& rng, std::size_t n, double lo, double hi) {
  std::vector<double> v(n);
  for (double& x : v) x = lo + (hi - lo) * rng.next_uniform();
  return v;
}

const std::vector<std::size_t> kLengths = {0, 1, 2, 3, 4, 5, 7, 8, 9, 16, 17, 33, 100, 257};

}  // namespace

TEST_CASE("backend dispatch reports a valid active backend") {
  const fk::Backend b = fk::active_backend();
  CHECK(fk::backend_available(b));
  CHECK(!fk::backend_name(b).empty());
  // The scalar reference is always compiled in.
  CHECK(fk::backend_available(fk::Backend::Scalar));
}

TEST_CASE("forcing an unavailable backend throws") {
#if !defined(__aarch64__)
  CHECK_THROWS_AS(fk::force_backend(fk::Backend::Neon), std::invalid_argument);
#else
  CHECK_THROWS_AS(fk::force_backend(fk::Backend::Avx2), std::invalid_argument);
#endif
}

TEST_CASE("elementwise kernels are bit-identical to the scalar reference") {
  fhp::Rng rng(11);
  for (std::size_t n : kLengths) {
    const auto a = random_vec(rng, n, -3.0, 3.0);
    const auto b = random_vec(rng, n, -3.0, 3.0);
    const auto s = random_vec(rng, n, 0.01, 2.5);
    const auto w = random_vec(rng, n, 0.0, 50.0);
    const auto vn = random_vec(rng, n, 1e-8, 10.0);
    const auto vs = random_vec(rng, n, 1e-8, 10.0);
    std::vector<double> got(n), ref(n);

    fk::mul(a.data(), b.data(), got.data(), n);
    fk::scalar::mul(a.data(), b.data(), ref.data(), n);
    CHECK(got == ref);

    fk::sub(a.data(), b.data(), got.data(), n);
    fk::scalar::sub(a.data(), b.data(), ref.data(), n);
    CHECK(got == ref);

    got = b;
    ref = b;
    fk::axpy(1.75, a.data(), got.data(), n);
    fk::scalar::axpy(1.75, a.data(), ref.data(), n);
    CHECK(got == ref);

    fk::tikhonov_apply(s.data(), w.data(), a.data(), got.data(), n);
    fk::scalar::tikhonov_apply(s.data(), w.data(), a.data(), ref.data(), n);
    CHECK(got == ref);

    fk::shrink_apply(s.data(), vn.data(), vs.data(), a.data(), got.data(), n);
    fk::scalar::shrink_apply(s.data(), vn.data(), vs.data(), a.data(), ref.data(), n);
    CHECK(got == ref);
  }
}

TEST_CASE("reduction kernels match the scalar reference to tight relative error") {
  fhp::Rng rng(12);
  for (std::size_t n : kLengths) {
    const auto a = random_vec(rng, n, -2.0, 2.0);
    const auto b = random_vec(rng, n, -2.0, 2.0);
    const auto w = random_vec(rng, n, 0.0, 3.0);

    const double d_got = fk::dot(a.data(), b.data(), n);
    const double d_ref = fk::scalar::dot(a.data(), b.data(), n);
    CHECK(std::abs(d_got - d_ref) <= 1e-13 * (1.0 + std::abs(d_ref)));

    const double wd_got = fk::weighted_dot(w.data(), a.data(), b.data(), n);
    const double wd_ref = fk::scalar::weighted_dot(w.data(), a.data(), b.data(), n);
    CHECK(std::abs(wd_got - wd_ref) <= 1e-13 * (1.0 + std::abs(wd_ref)));

    const double s_got = fk::sum(a.data(), n);
    const double s_ref = fk::scalar::sum(a.data(), n);
    CHECK(std::abs(s_got - s_ref) <= 1e-13 * (1.0 + std::abs(s_ref)));
  }
}

TEST_CASE("reductions agree with extended-precision accumulation") {
  fhp::Rng rng(13);
  const std::size_t n = 1000;
  const auto a = random_vec(rng, n, -1.0, 1.0);
  const auto b = random_vec(rng, n, -1.0, 1.0);
  long double acc = 0.0L;
  for (std::size_t i = 0; i < n; ++i) acc += static_cast<long double>(a[i]) * b[i];
  CHECK(std::abs(fk::dot(a.data(), b.data(), n) - static_cast<double>(acc)) <=
        1e-12 * (1.0 + std::abs(static_cast<double>(acc))));
}

TEST_CASE("tikhonov kernel computes x / (1 + s^2 w) per coordinate") {
  const std::vector<double> s = {0.5, 1.0, 2.0};
  const std::vector<double> w = {4.0, 1.0, 0.0};
  const std::vector<double> x = {2.0, 3.0, 5.0};
  std::vector<double> dst(3);
  fk::tikhonov_apply(s.data(), w.data(), x.data(), dst.data(), 3);
  CHECK(dst[0] == doctest::Approx(1.0).epsilon(1e-15));   // 2 / (1 + 0.25*4)
  CHECK(dst[1] == doctest::Approx(1.5).epsilon(1e-15));   // 3 / 2
  CHECK(dst[2] == doctest::Approx(5.0).epsilon(1e-15));   // zero weight: identity
}

TEST_CASE("shrink kernel is stable when the variance ratio overflows") {
  // vs / (vs + s^2 vn) must shrink to 0 when s^2 vn overflows, stay a tiny
  // well-defined number when the ratio is merely astronomical, and stay near
  // 1 when s^2 vn is negligible. No case may produce NaN.
  const std::vector<double> s = {1e10, 1.0, 1.0};
  const std::vector<double> vn = {1e300, 1e300, 1e-300};
  const std::vector<double> vs = {1e-10, 1e-10, 1.0};
  const std::vector<double> x = {1.0, 1.0, 1.0};
  std::vector<double> dst(3);
  fk::shrink_apply(s.data(), vn.data(), vs.data(), x.data(), dst.data(), 3);
  CHECK(dst[0] == 0.0);  // s^2 vn = inf
  CHECK(std::isfinite(dst[1]));
  CHECK(dst[1] >= 0.0);
  CHECK(dst[1] <= 1e-300);
  CHECK(dst[2] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("pairwise summation is exact on integers and accurate on large sums") {
  std::vector<double> ones(100000, 1.0);
  CHECK(fhp::harness::pairwise_sum(ones.data(), ones.size()) == 100000.0);

  fhp::Rng rng(14);
  std::vector<double> v(50001);
  long double acc = 0.0L;
  for (double& x : v) {
    x = rng.next_normal();
    acc += x;
  }
  const double got = fhp::harness::pairwise_sum(v.data(), v.size());
  CHECK(std::abs(got - static_cast<double>(acc)) <= 1e-10);
}

TEST_CASE("pairwise summation handles empty and single-element arrays") {
  CHECK(fhp::harness::pairwise_sum(nullptr, 0) == 0.0);
  const double one = 42.0;
  CHECK(fhp::harness::pairwise_sum(&one, 1) == 42.0);
}
