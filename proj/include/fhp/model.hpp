#pragma once

// Gaussian observation model behind the filter: the observation is
// x = y + u where the signal is y = y0 + (min-norm preimage of v), u is
// domain-side noise, v is codomain-side noise, and both covariances are
// diagonal in the singular coordinates. The deterministic kernel component
// y0 is the mean of the signal. All covariance structure commutes with the
// span projection by construction.

#include <cstdint>
#include <utility>
#include <vector>

#include "fhp/spectral.hpp"

namespace fhp {

struct DiagonalCovariance {
  Space space = Space::Domain;
  SequenceFamily family;           // generator of the span eigenvalues
  std::vector<double> span_vars;   // realized prefix, strictly positive
  std::vector<double> kernel_vars; // kernel-block eigenvalues (domain side only)

  static DiagonalCovariance domain_cov(const SequenceFamily& f, std::size_t n,
                                       std::vector<double> kernel_vars);
  static DiagonalCovariance codomain_cov(const SequenceFamily& f, std::size_t n);

  // Trace of the realized block: kernel eigenvalues plus the span prefix.
  double partial_trace() const;
};

struct ModelSpec {
  SingularSystem system;
  std::vector<double> mean_kernel;   // kernel coordinates of E[signal]
  DiagonalCovariance obs_noise;      // covariance of u
  DiagonalCovariance smooth_noise;   // covariance of v

  static ModelSpec make(SingularSystem system, std::vector<double> mean_kernel,
                        DiagonalCovariance obs_noise, DiagonalCovariance smooth_noise);

  std::size_t truncation() const { return system.truncation; }
  std::size_t kernel_dim() const { return system.kernel_dim; }
};

// Covariance of the signal y (and equally, the cross-covariance of (x, y)):
// diagonal with entries smooth_var_k / s_k^2 on the span, zero on the kernel.
DiagonalOperator signal_covariance(const ModelSpec& m);

struct SeriesCheck {
  Decision decision = Decision::UnknownExplicitFamily;
  double partial = 0.0;  // sum over the realized prefix (may be +inf)
};

struct AdmissibilityReport {
  SeriesCheck obs_noise_trace;    // trace of the observation-noise covariance
  SeriesCheck smooth_noise_trace; // trace of the smoothness-noise covariance
  SeriesCheck signal_trace;       // trace of the signal covariance
  SeriesCheck conditioning_hs;    // squared Hilbert-Schmidt norm of the
                                  // conditioning operator
  bool any_divergent() const;
};

AdmissibilityReport check_admissibility(const ModelSpec& m);

// One draw of (x, y) by truncated Karhunen-Loeve expansion. The key selects
// an independent substream; identical keys reproduce the pair bit for bit.
// Draw order: kernel block of u, span of u, span of v.
std::pair<HilbertElement, HilbertElement> sample_pair(const ModelSpec& m,
                                                      std::uint64_t key);

// E[y | x]: the kernel block is the deterministic mean, span coordinate k is
// shrunk by smooth_var_k / (smooth_var_k + s_k^2 obs_var_k).
HilbertElement conditional_expectation(const ModelSpec& m, const HilbertElement& x);

}  // namespace fhp
