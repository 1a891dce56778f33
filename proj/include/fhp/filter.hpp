#pragma once

// The penalized smoothing problem and its closed-form solution. For a
// positive semidefinite codomain weight operator W, the objective is
//   J_W(y) = ||x - y||^2 + <A y, W A y>
// whose unique minimizer scales singular coordinate k of x by
// 1 / (1 + s_k^2 w_k) and passes the kernel block through unchanged. The
// model-optimal weight divides the two noise spectra entrywise; with it the
// minimizer differs from the conditional expectation only on the kernel
// block, where the gap is exactly (observed kernel) - (mean kernel).

#include <cstddef>
#include <vector>

#include "fhp/model.hpp"
#include "fhp/spectral.hpp"

namespace fhp {

// J_W evaluated at y. W must be positive semidefinite; x, y domain elements.
double penalized_objective(const SingularSystem& sys, const DiagonalOperator& weight,
                           const HilbertElement& x, const HilbertElement& y);

// argmin_y J_W(y).
HilbertElement smooth(const SingularSystem& sys, const DiagonalOperator& weight,
                      const HilbertElement& x);

// Weight operator minimizing the expected distance to the conditional
// expectation: diagonal obs_var_k / smooth_var_k on the codomain, zero on
// the unmodelled complement of the range.
DiagonalOperator optimal_smoother(const ModelSpec& m);

// smooth(A, optimal_smoother(m), x) - conditional_expectation(m, x),
// computed from the two pipelines (not from the closed form).
HilbertElement filter_residual(const ModelSpec& m, const HilbertElement& x);

// Covariance of the filter residual: zero on the span, the observation-noise
// kernel variances on the kernel block.
struct ResidualCovariance {
  DiagonalOperator op;
  double trace;
};
ResidualCovariance residual_covariance(const ModelSpec& m);

struct OptimalityEntry {
  std::size_t index;
  double distance;  // || smooth(A, W, x) - E[y|x] ||
};

struct OptimalityReport {
  double optimal_distance;  // distance attained by the optimal weight
  double kernel_gap;        // || x.kernel - mean kernel ||, the exact lower bound
  std::size_t violations;   // candidates that beat the bound beyond tolerance
  std::vector<OptimalityEntry> candidates;  // ordered by candidate index
};

// Evaluates every candidate weight against the pathwise lower bound. The
// report's candidate order matches the input order regardless of any
// parallel evaluation.
OptimalityReport verify_optimality(const ModelSpec& m, const HilbertElement& x,
                                   const std::vector<DiagonalOperator>& candidates,
                                   double tolerance = 1e-12);

// Finite-sample trend filter: minimizes sum (x_t - y_t)^2 +
// alpha * sum (y_t - 2 y_{t-1} + y_{t-2})^2 by a dense symmetric
// positive-definite solve. Requires at least 3 points and alpha > 0.
std::vector<double> classical_hp(const std::vector<double>& series, double alpha);

}  // namespace fhp
