#include "fhp/model.hpp"

#include <cmath>
#include <stdexcept>

#include "fhp/kernels.hpp"
#include "fhp/rng.hpp"

namespace fhp {

DiagonalCovariance DiagonalCovariance::domain_cov(const SequenceFamily& f, std::size_t n,
                                                  std::vector<double> kernel_vars) {
  DiagonalCovariance c;
  c.space = Space::Domain;
  c.family = f;
  c.span_vars = f.realize(n);
  c.kernel_vars = std::move(kernel_vars);
  for (double v : c.span_vars) {
    if (!(v > 0.0)) throw std::invalid_argument("covariance eigenvalues must be > 0");
  }
  for (double v : c.kernel_vars) {
    if (!(v > 0.0)) throw std::invalid_argument("kernel variances must be > 0");
  }
  return c;
}

DiagonalCovariance DiagonalCovariance::codomain_cov(const SequenceFamily& f, std::size_t n) {
  DiagonalCovariance c;
  c.space = Space::Codomain;
  c.family = f;
  c.span_vars = f.realize(n);
  for (double v : c.span_vars) {
    if (!(v > 0.0)) throw std::invalid_argument("covariance eigenvalues must be > 0");
  }
  return c;
}

double DiagonalCovariance::partial_trace() const {
  return kernels::sum(kernel_vars.data(), kernel_vars.size()) +
         kernels::sum(span_vars.data(), span_vars.size());
}

ModelSpec ModelSpec::make(SingularSystem system, std::vector<double> mean_kernel,
                          DiagonalCovariance obs_noise, DiagonalCovariance smooth_noise) {
  if (obs_noise.space != Space::Domain || smooth_noise.space != Space::Codomain) {
    throw std::invalid_argument("model covariances are on the wrong spaces");
  }
  if (obs_noise.span_vars.size() != system.truncation ||
      smooth_noise.span_vars.size() != system.truncation) {
    throw std::invalid_argument("covariance truncation does not match the system");
  }
  if (obs_noise.kernel_vars.size() != system.kernel_dim) {
    throw std::invalid_argument("observation-noise kernel block has wrong dimension");
  }
  if (mean_kernel.size() != system.kernel_dim) {
    throw std::invalid_argument("signal mean kernel block has wrong dimension");
  }
  ModelSpec m;
  m.system = std::move(system);
  m.mean_kernel = std::move(mean_kernel);
  m.obs_noise = std::move(obs_noise);
  m.smooth_noise = std::move(smooth_noise);
  return m;
}

DiagonalOperator signal_covariance(const ModelSpec& m) {
  const std::size_t n = m.truncation();
  std::vector<double> diag(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double s = m.system.values[k];
    diag[k] = m.smooth_noise.span_vars[k] / (s * s);
  }
  return DiagonalOperator::domain_op(std::move(diag),
                                     std::vector<double>(m.kernel_dim(), 0.0));
}

bool AdmissibilityReport::any_divergent() const {
  return obs_noise_trace.decision == Decision::ProvenDivergent ||
         smooth_noise_trace.decision == Decision::ProvenDivergent ||
         signal_trace.decision == Decision::ProvenDivergent ||
         conditioning_hs.decision == Decision::ProvenDivergent;
}

AdmissibilityReport check_admissibility(const ModelSpec& m) {
  const std::size_t n = m.truncation();
  const DecayClass sv = decay_class(m.system.family);
  const DecayClass ov = decay_class(m.obs_noise.family);
  const DecayClass sm = decay_class(m.smooth_noise.family);

  AdmissibilityReport r;
  r.obs_noise_trace.decision = series_decision(ov);
  r.obs_noise_trace.partial = m.obs_noise.partial_trace();
  r.smooth_noise_trace.decision = series_decision(sm);
  r.smooth_noise_trace.partial = m.smooth_noise.partial_trace();

  // Signal covariance eigenvalues: smooth_var / s^2.
  r.signal_trace.decision = series_decision(sm / (sv * sv));
  double qv_partial = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double s = m.system.values[k];
    qv_partial += m.smooth_noise.span_vars[k] / (s * s);
  }
  r.signal_trace.partial = qv_partial;

  // Conditioning operator: squared Hilbert-Schmidt norm has terms
  // (smooth/s^2) * (1 + s^2 obs / smooth)^-1 = (smooth/s^2) * shrink factor.
  // With num = smooth^2, the denominator s^2 smooth + s^4 obs is dominated
  // by whichever of its two class terms decays slower.
  r.conditioning_hs.decision =
      ratio_series_decision(sm * sm, sv * sv * sm, sv.pow(4) * ov);
  double hs_partial = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double s = m.system.values[k];
    const double tau = m.smooth_noise.span_vars[k];
    const double mu = m.obs_noise.span_vars[k];
    const double lead = tau / (s * s);                // may overflow to +inf
    const double shrinkf = tau / (tau + s * s * mu);  // in (0, 1]
    hs_partial += lead * shrinkf;
  }
  r.conditioning_hs.partial = hs_partial;
  return r;
}

std::pair<HilbertElement, HilbertElement> sample_pair(const ModelSpec& m,
                                                      std::uint64_t key) {
  const std::size_t n = m.truncation();
  const std::size_t d0 = m.kernel_dim();
  Rng rng(key);

  HilbertElement u = HilbertElement::zero(Space::Domain, d0, n);
  for (std::size_t j = 0; j < d0; ++j) {
    u.kernel[j] = std::sqrt(m.obs_noise.kernel_vars[j]) * rng.next_normal();
  }
  for (std::size_t k = 0; k < n; ++k) {
    u.span[k] = std::sqrt(m.obs_noise.span_vars[k]) * rng.next_normal();
  }

  HilbertElement v = HilbertElement::zero(Space::Codomain, 0, n);
  for (std::size_t k = 0; k < n; ++k) {
    v.span[k] = std::sqrt(m.smooth_noise.span_vars[k]) * rng.next_normal();
  }

  HilbertElement y = solve_min_norm(m.system, v, m.mean_kernel);
  HilbertElement x = y + u;
  return {std::move(x), std::move(y)};
}

HilbertElement conditional_expectation(const ModelSpec& m, const HilbertElement& x) {
  const std::size_t n = m.truncation();
  if (x.space != Space::Domain || x.span.size() != n || x.kernel.size() != m.kernel_dim()) {
    throw std::invalid_argument("conditional_expectation: element does not match model");
  }
  HilbertElement e = HilbertElement::zero(Space::Domain, m.kernel_dim(), n);
  e.kernel = m.mean_kernel;
  kernels::shrink_apply(m.system.values.data(), m.obs_noise.span_vars.data(),
                        m.smooth_noise.span_vars.data(), x.span.data(), e.span.data(), n);
  return e;
}

}  // namespace fhp
