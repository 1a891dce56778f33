#include "fhp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fhp/kernels.hpp"

namespace fhp {

namespace {

void require_same_shape(const HilbertElement& a, const HilbertElement& b,
                        const char* what) {
  if (a.space != b.space || a.kernel.size() != b.kernel.size() ||
      a.span.size() != b.span.size()) {
    throw std::invalid_argument(std::string(what) +
                                ": elements live in different spaces or shapes");
  }
}

void require_domain_shape(const SingularSystem& sys, const HilbertElement& h,
                          const char* what) {
  if (h.space != Space::Domain) {
    throw std::invalid_argument(std::string(what) + ": expected a domain element");
  }
  if (h.kernel.size() != sys.kernel_dim || h.span.size() != sys.truncation) {
    throw std::invalid_argument(std::string(what) + ": element shape does not match system");
  }
}

void require_codomain_shape(const SingularSystem& sys, const HilbertElement& g,
                            const char* what) {
  if (g.space != Space::Codomain) {
    throw std::invalid_argument(std::string(what) + ": expected a codomain element");
  }
  if (g.span.size() != sys.truncation) {
    throw std::invalid_argument(std::string(what) + ": element shape does not match system");
  }
}

}  // namespace

HilbertElement HilbertElement::domain(std::vector<double> kernel, std::vector<double> span) {
  HilbertElement h;
  h.space = Space::Domain;
  h.kernel = std::move(kernel);
  h.span = std::move(span);
  return h;
}

HilbertElement HilbertElement::codomain(std::vector<double> span) {
  HilbertElement h;
  h.space = Space::Codomain;
  h.span = std::move(span);
  return h;
}

HilbertElement HilbertElement::zero(Space s, std::size_t kernel_dim, std::size_t n) {
  HilbertElement h;
  h.space = s;
  if (s == Space::Domain) h.kernel.assign(kernel_dim, 0.0);
  h.span.assign(n, 0.0);
  return h;
}

double HilbertElement::norm() const { return std::sqrt(inner(*this, *this)); }

double inner(const HilbertElement& a, const HilbertElement& b) {
  require_same_shape(a, b, "inner");
  double acc = kernels::dot(a.kernel.data(), b.kernel.data(), a.kernel.size());
  return acc + kernels::dot(a.span.data(), b.span.data(), a.span.size());
}

HilbertElement operator+(const HilbertElement& a, const HilbertElement& b) {
  require_same_shape(a, b, "operator+");
  HilbertElement r = a;
  for (std::size_t i = 0; i < r.kernel.size(); ++i) r.kernel[i] += b.kernel[i];
  for (std::size_t i = 0; i < r.span.size(); ++i) r.span[i] += b.span[i];
  return r;
}

HilbertElement operator-(const HilbertElement& a, const HilbertElement& b) {
  require_same_shape(a, b, "operator-");
  HilbertElement r = a;
  kernels::sub(a.kernel.data(), b.kernel.data(), r.kernel.data(), r.kernel.size());
  kernels::sub(a.span.data(), b.span.data(), r.span.data(), r.span.size());
  return r;
}

HilbertElement operator*(double c, const HilbertElement& a) {
  HilbertElement r = a;
  for (double& v : r.kernel) v *= c;
  for (double& v : r.span) v *= c;
  return r;
}

SingularSystem SingularSystem::from_family(const SequenceFamily& f, std::size_t truncation,
                                           std::size_t kernel_dim) {
  if (truncation == 0) throw std::invalid_argument("truncation must be >= 1");
  SingularSystem sys;
  sys.truncation = truncation;
  sys.kernel_dim = kernel_dim;
  sys.family = f;
  sys.values = f.realize(truncation);
  for (std::size_t i = 0; i < sys.values.size(); ++i) {
    if (!(sys.values[i] > 0.0)) {
      throw std::invalid_argument("singular values must be strictly positive");
    }
    if (i > 0 && sys.values[i] > sys.values[i - 1]) {
      throw std::invalid_argument("singular values must be nonincreasing");
    }
  }
  return sys;
}

SingularSystem SingularSystem::from_values(std::vector<double> values,
                                           std::size_t kernel_dim) {
  const std::size_t n = values.size();
  return from_family(SequenceFamily::explicit_values(std::move(values)), n, kernel_dim);
}

DiagonalOperator DiagonalOperator::domain_op(std::vector<double> diag,
                                             std::vector<double> kernel_diag) {
  DiagonalOperator op;
  op.space = Space::Domain;
  op.diag = std::move(diag);
  op.kernel_diag = std::move(kernel_diag);
  return op;
}

DiagonalOperator DiagonalOperator::codomain_op(std::vector<double> diag) {
  DiagonalOperator op;
  op.space = Space::Codomain;
  op.diag = std::move(diag);
  return op;
}

DiagonalOperator DiagonalOperator::identity(Space s, std::size_t n, std::size_t kernel_dim) {
  DiagonalOperator op;
  op.space = s;
  op.diag.assign(n, 1.0);
  if (s == Space::Domain) op.kernel_diag.assign(kernel_dim, 1.0);
  return op;
}

HilbertElement DiagonalOperator::apply(const HilbertElement& h) const {
  if (h.space != space) {
    throw std::invalid_argument("diagonal operator applied to element of the wrong space");
  }
  if (h.span.size() != diag.size() || h.kernel.size() != kernel_diag.size()) {
    throw std::invalid_argument("diagonal operator shape does not match element");
  }
  HilbertElement r = h;
  kernels::mul(kernel_diag.data(), h.kernel.data(), r.kernel.data(), r.kernel.size());
  kernels::mul(diag.data(), h.span.data(), r.span.data(), r.span.size());
  return r;
}

double DiagonalOperator::operator_norm() const {
  double m = 0.0;
  for (double v : diag) m = std::max(m, std::abs(v));
  for (double v : kernel_diag) m = std::max(m, std::abs(v));
  return m;
}

bool DiagonalOperator::positive_semidefinite() const {
  for (double v : diag) {
    if (v < 0.0) return false;
  }
  for (double v : kernel_diag) {
    if (v < 0.0) return false;
  }
  return true;
}

DiagonalOperator DiagonalOperator::inverse() const {
  DiagonalOperator r = *this;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (diag[i] == 0.0) throw std::invalid_argument("diagonal operator is singular");
    r.diag[i] = 1.0 / diag[i];
  }
  for (std::size_t i = 0; i < kernel_diag.size(); ++i) {
    if (kernel_diag[i] == 0.0) throw std::invalid_argument("diagonal operator is singular");
    r.kernel_diag[i] = 1.0 / kernel_diag[i];
  }
  return r;
}

HilbertElement apply_forward(const SingularSystem& sys, const HilbertElement& h) {
  require_domain_shape(sys, h, "apply_forward");
  HilbertElement g = HilbertElement::zero(Space::Codomain, 0, sys.truncation);
  kernels::mul(sys.values.data(), h.span.data(), g.span.data(), sys.truncation);
  return g;
}

HilbertElement apply_adjoint(const SingularSystem& sys, const HilbertElement& g) {
  require_codomain_shape(sys, g, "apply_adjoint");
  HilbertElement h = HilbertElement::zero(Space::Domain, sys.kernel_dim, sys.truncation);
  kernels::mul(sys.values.data(), g.span.data(), h.span.data(), sys.truncation);
  return h;
}

HilbertElement solve_min_norm(const SingularSystem& sys, const HilbertElement& v,
                              std::vector<double> kernel_component) {
  require_codomain_shape(sys, v, "solve_min_norm");
  if (kernel_component.size() != sys.kernel_dim) {
    throw std::invalid_argument("solve_min_norm: kernel component has wrong dimension");
  }
  HilbertElement y = HilbertElement::zero(Space::Domain, sys.kernel_dim, sys.truncation);
  y.kernel = std::move(kernel_component);
  for (std::size_t k = 0; k < sys.truncation; ++k) y.span[k] = v.span[k] / sys.values[k];
  return y;
}

HilbertElement project_span(const SingularSystem& sys, const HilbertElement& h) {
  require_domain_shape(sys, h, "project_span");
  HilbertElement r = h;
  std::fill(r.kernel.begin(), r.kernel.end(), 0.0);
  return r;
}

HilbertElement project_kernel(const SingularSystem& sys, const HilbertElement& h) {
  require_domain_shape(sys, h, "project_kernel");
  HilbertElement r = h;
  std::fill(r.span.begin(), r.span.end(), 0.0);
  return r;
}

}  // namespace fhp
