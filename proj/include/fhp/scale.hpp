#pragma once

// Scale-of-spaces extension. The generator is the inverse of A*A restricted
// to the span, diagonal s_k^-2; its real powers index a scale of spaces in
// which non-trace-class (for example white) noise becomes summable once the
// index is pushed far enough down. All scale-level computations are span
// only: the kernel block contributes nothing to scale norms or to the
// extended covariances.

#include <vector>

#include "fhp/model.hpp"
#include "fhp/spectral.hpp"

namespace fhp {

// (A*A)^-index on the span: diagonal s_k^(-2 index), zero on the kernel
// block. index may be any real, including negative (positive powers of A*A).
DiagonalOperator fractional_power(const SingularSystem& sys, double index);

// Norm of h in the space with dual index `index`: for index >= 0 this is the
// norm of the dual space H^-index, sqrt(sum_k s_k^(4 index) h_k^2); negative
// values give the corresponding upper spaces with weights s_k^(-4|index|).
// The kernel block never contributes; index 0 gives the plain span norm.
double scale_norm(const SingularSystem& sys, const HilbertElement& h, double index);

// Base model pushed down n levels of the scale. Extended covariance
// eigenvalues: obs s^(4n) mu, smooth s^(4n) tau, signal s^(2(2n-1)) tau.
struct ScaleModel {
  ModelSpec base;
  int index = 1;
  std::vector<double> ext_obs_vars;
  std::vector<double> ext_smooth_vars;
  std::vector<double> ext_signal_vars;
  SeriesCheck obs_extension;      // sum s^(4n-2) mu, trace condition for the
                                  // extended observation noise
  SeriesCheck smooth_extension;   // sum s^(4n) tau
  SeriesCheck white_noise_series; // sum s^(2(2n-1)), the condition under
                                  // which constant covariances become
                                  // admissible at this level
};

ScaleModel extend_model(const ModelSpec& m, int index);

// Squared Hilbert-Schmidt norm of the extended conditioning operator, terms
// tau s^(2(2n-1)) / (1 + s^2 mu / tau).
SeriesCheck check_hs_extended(const ScaleModel& sm);

// Optimal weight at scale level n. The s^(4n) factors cancel algebraically,
// so the diagonal equals the base-space ratio obs/smooth entry for entry;
// with constant noise spectra every entry is exactly their ratio.
DiagonalOperator optimal_smoother_extended(const ScaleModel& sm);

// E[y | x] at scale level n. The shrink factors also cancel back to the
// base-space form; kernel block handling matches the base model.
HilbertElement conditional_expectation_extended(const ScaleModel& sm,
                                                const HilbertElement& x);

}  // namespace fhp
