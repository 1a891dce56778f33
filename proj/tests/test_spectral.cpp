#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "doctest.h"
#include "fhp/rng.hpp"
#include "fhp/spectral.hpp"
#include "support/oracles.hpp"

using fhp::DiagonalOperator;
using fhp::HilbertElement;
using fhp::SequenceFamily;
using fhp::SingularSystem;
using fhp::Space;

namespace {

SingularSystem sys_from(std::vector<double> values, std::size_t d0) {
  return SingularSystem::from_values(std::move(values), d0);
}

}  // namespace

TEST_CASE("element norm satisfies the Parseval identity") {
  const auto h = HilbertElement::domain({3.0, 4.0}, {1.0, 2.0, 2.0});
  CHECK(h.norm() == doctest::Approx(std::sqrt(9 + 16 + 1 + 4 + 4)));
  CHECK(HilbertElement::zero(Space::Domain, 2, 3).norm() == 0.0);
}

TEST_CASE("inner product: bilinear pairing of both blocks") {
  const auto a = HilbertElement::codomain({1.0, 2.0});
  const auto b = HilbertElement::codomain({3.0, 4.0});
  CHECK(fhp::inner(a, b) == doctest::Approx(11.0));
  const auto e1 = HilbertElement::domain({}, {1.0, 0.0});
  const auto e2 = HilbertElement::domain({}, {0.0, 1.0});
  CHECK(fhp::inner(e1, e2) == 0.0);
  CHECK(fhp::inner(e1, e1) == 1.0);
}

TEST_CASE("inner product rejects mismatched spaces and shapes") {
  const auto dom = HilbertElement::domain({}, {1.0});
  const auto cod = HilbertElement::codomain({1.0});
  CHECK_THROWS_AS((void)fhp::inner(dom, cod), std::invalid_argument);
  const auto longer = HilbertElement::domain({}, {1.0, 2.0});
  CHECK_THROWS_AS((void)fhp::inner(dom, longer), std::invalid_argument);
}

TEST_CASE("element arithmetic is componentwise") {
  const auto a = HilbertElement::domain({1.0}, {2.0, 3.0});
  const auto b = HilbertElement::domain({0.5}, {1.0, -1.0});
  const auto s = a + b;
  CHECK(s.kernel[0] == 1.5);
  CHECK(s.span[1] == 2.0);
  const auto d = a - b;
  CHECK(d.kernel[0] == 0.5);
  const auto c = 2.0 * a;
  CHECK(c.span[0] == 4.0);
}

TEST_CASE("singular systems validate positivity and monotonicity") {
  CHECK_THROWS_AS(sys_from({1.0, 0.0}, 0), std::invalid_argument);
  CHECK_THROWS_AS(sys_from({0.5, 1.0}, 0), std::invalid_argument);
  CHECK_THROWS_AS(sys_from({}, 0), std::invalid_argument);
  const auto sys = SingularSystem::from_family(SequenceFamily::power_law(1.0), 3, 2);
  CHECK(sys.values == std::vector<double>{1.0, 0.5, 1.0 / 3.0});
  CHECK(sys.kernel_dim == 2);
}

TEST_CASE("forward map scales the span and annihilates the kernel") {
  const auto sys = sys_from({1.0, 0.5, 1.0 / 3.0}, 1);
  const auto h = HilbertElement::domain({7.0}, {1.0, 2.0, 3.0});
  const auto g = fhp::apply_forward(sys, h);
  CHECK(g.space == Space::Codomain);
  CHECK(g.span[0] == doctest::Approx(1.0));
  CHECK(g.span[1] == doctest::Approx(1.0));
  CHECK(g.span[2] == doctest::Approx(1.0));
  // A pure kernel element maps to exactly zero.
  const auto pure = HilbertElement::domain({7.0}, {0.0, 0.0, 0.0});
  CHECK(fhp::apply_forward(sys, pure).norm() == 0.0);
}

TEST_CASE("forward map agrees with a dense matrix multiply") {
  fhp::Rng rng(21);
  const auto sys = sys_from({1.0, 0.5, 1.0 / 3.0}, 0);
  Eigen::Matrix3d a = Eigen::Vector3d(1.0, 0.5, 1.0 / 3.0).asDiagonal();
  for (int trial = 0; trial < 10; ++trial) {
    const auto h = testsupport::random_domain_element(rng, 0, 3);
    const Eigen::Vector3d hv(h.span[0], h.span[1], h.span[2]);
    const Eigen::Vector3d gv = a * hv;
    const auto g = fhp::apply_forward(sys, h);
    for (int k = 0; k < 3; ++k) CHECK(g.span[static_cast<std::size_t>(k)] ==
                                      doctest::Approx(gv[k]).epsilon(1e-15));
  }
}

TEST_CASE("adjoint identity <Ah, g> = <h, A*g>") {
  fhp::Rng rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.next_u64() % 8);
    const std::size_t d0 = rng.next_u64() % 3;
    const auto sys =
        SingularSystem::from_values(testsupport::random_decreasing(rng, n, 0.1, 2.0), d0);
    const auto h = testsupport::random_domain_element(rng, d0, n);
    std::vector<double> gs(n);
    for (double& v : gs) v = rng.next_normal();
    const auto g = HilbertElement::codomain(gs);
    const double lhs = fhp::inner(fhp::apply_forward(sys, h), g);
    const double rhs = fhp::inner(h, fhp::apply_adjoint(sys, g));
    CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
  }
}

TEST_CASE("adjoint composed with forward scales by the squared singular value") {
  const auto sys = sys_from({1.0, 0.5}, 0);
  const auto e2 = HilbertElement::domain({}, {0.0, 1.0});
  const auto out = fhp::apply_adjoint(sys, fhp::apply_forward(sys, e2));
  CHECK(out.span[0] == 0.0);
  CHECK(out.span[1] == doctest::Approx(0.25));
}

TEST_CASE("minimum-norm preimage solves A y = v with prescribed kernel block") {
  const auto sys = sys_from({1.0, 1.0 / 3.0}, 1);
  const auto v = HilbertElement::codomain({3.0, 1.0});
  const auto y = fhp::solve_min_norm(sys, v, {5.0});
  CHECK(y.kernel == std::vector<double>{5.0});
  CHECK(y.span[0] == doctest::Approx(3.0));
  CHECK(y.span[1] == doctest::Approx(3.0));
  const auto round = fhp::apply_forward(sys, y);
  CHECK((round - v).norm() <= 1e-12 * (1.0 + v.norm()));
}

TEST_CASE("round trip holds for random systems and right-hand sides") {
  fhp::Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.next_u64() % 6);
    const auto sys =
        SingularSystem::from_values(testsupport::random_decreasing(rng, n, 0.05, 2.0), 2);
    std::vector<double> vs(n);
    for (double& t : vs) t = rng.next_normal();
    const auto v = HilbertElement::codomain(vs);
    const auto y = fhp::solve_min_norm(sys, v, {rng.next_normal(), rng.next_normal()});
    CHECK((fhp::apply_forward(sys, y) - v).norm() <= 1e-12 * (1.0 + v.norm()));
  }
}

TEST_CASE("span projection is idempotent and orthogonal to its complement") {
  fhp::Rng rng(24);
  const auto sys = sys_from({1.0, 0.5, 0.25}, 2);
  for (int trial = 0; trial < 10; ++trial) {
    const auto h = testsupport::random_domain_element(rng, 2, 3);
    const auto ph = fhp::project_span(sys, h);
    CHECK(fhp::project_span(sys, ph) == ph);  // exactly: pure data movement
    const auto comp = h - ph;
    CHECK(std::abs(fhp::inner(ph, comp)) <= 1e-14 * (1.0 + h.norm() * h.norm()));
    CHECK((ph + fhp::project_kernel(sys, h)) == h);
  }
  // Pure kernel element projects to zero; pure span element is fixed.
  const auto pure_kernel = HilbertElement::domain({1.0, -2.0}, {0.0, 0.0, 0.0});
  CHECK(fhp::project_span(sys, pure_kernel).norm() == 0.0);
  const auto pure_span = HilbertElement::domain({0.0, 0.0}, {1.0, 2.0, 3.0});
  CHECK(fhp::project_span(sys, pure_span) == pure_span);
}

TEST_CASE("diagonal operators apply entrywise on both blocks") {
  const auto op = DiagonalOperator::domain_op({2.0, 3.0}, {0.5});
  const auto h = HilbertElement::domain({4.0}, {1.0, 1.0});
  const auto out = op.apply(h);
  CHECK(out.kernel[0] == 2.0);
  CHECK(out.span[0] == 2.0);
  CHECK(out.span[1] == 3.0);
  CHECK(op.operator_norm() == 3.0);
  CHECK(op.positive_semidefinite());
  CHECK_FALSE(DiagonalOperator::codomain_op({-1.0, 2.0}).positive_semidefinite());
}

TEST_CASE("identity and inverse behave as expected") {
  const auto id = DiagonalOperator::identity(Space::Domain, 3, 1);
  const auto h = HilbertElement::domain({2.0}, {1.0, -1.0, 5.0});
  CHECK(id.apply(h) == h);
  const auto op = DiagonalOperator::codomain_op({2.0, 4.0});
  const auto inv = op.inverse();
  CHECK(inv.diag[0] == 0.5);
  CHECK(inv.diag[1] == 0.25);
  CHECK_THROWS_AS((void)DiagonalOperator::codomain_op({1.0, 0.0}).inverse(),
                  std::invalid_argument);
}

TEST_CASE("operator application rejects shape mismatches") {
  const auto op = DiagonalOperator::codomain_op({1.0, 2.0});
  const auto wrong_space = HilbertElement::domain({}, {1.0, 2.0});
  CHECK_THROWS_AS((void)op.apply(wrong_space), std::invalid_argument);
  const auto sys = sys_from({1.0, 0.5}, 0);
  const auto short_h = HilbertElement::domain({}, {1.0});
  CHECK_THROWS_AS((void)fhp::apply_forward(sys, short_h), std::invalid_argument);
}
