#include "fhp/scale.hpp"

#include <cmath>
#include <stdexcept>

#include "fhp/filter.hpp"
#include "fhp/kernels.hpp"

namespace fhp {

DiagonalOperator fractional_power(const SingularSystem& sys, double index) {
  std::vector<double> diag(sys.truncation);
  for (std::size_t k = 0; k < sys.truncation; ++k) {
    diag[k] = std::pow(sys.values[k], -2.0 * index);
  }
  return DiagonalOperator::domain_op(std::move(diag),
                                     std::vector<double>(sys.kernel_dim, 0.0));
}

double scale_norm(const SingularSystem& sys, const HilbertElement& h, double index) {
  if (h.space != Space::Domain || h.span.size() != sys.truncation) {
    throw std::invalid_argument("scale_norm: element does not match system");
  }
  std::vector<double> w(sys.truncation);
  for (std::size_t k = 0; k < sys.truncation; ++k) {
    w[k] = std::pow(sys.values[k], 4.0 * index);
  }
  return std::sqrt(
      kernels::weighted_dot(w.data(), h.span.data(), h.span.data(), sys.truncation));
}

ScaleModel extend_model(const ModelSpec& m, int index) {
  if (index < 1) throw std::invalid_argument("extend_model: scale index must be >= 1");
  const std::size_t n = m.truncation();

  ScaleModel sm;
  sm.base = m;
  sm.index = index;
  sm.ext_obs_vars.resize(n);
  sm.ext_smooth_vars.resize(n);
  sm.ext_signal_vars.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double s = m.system.values[k];
    const double s4n = std::pow(s, 4.0 * index);
    const double s2m = std::pow(s, 2.0 * (2.0 * index - 1.0));
    sm.ext_obs_vars[k] = s4n * m.obs_noise.span_vars[k];
    sm.ext_smooth_vars[k] = s4n * m.smooth_noise.span_vars[k];
    sm.ext_signal_vars[k] = s2m * m.smooth_noise.span_vars[k];
  }

  const DecayClass sv = decay_class(m.system.family);
  const DecayClass ov = decay_class(m.obs_noise.family);
  const DecayClass tv = decay_class(m.smooth_noise.family);

  sm.obs_extension.decision = series_decision(sv.pow(4.0 * index - 2.0) * ov);
  double obs_partial = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    obs_partial +=
        std::pow(m.system.values[k], 4.0 * index - 2.0) * m.obs_noise.span_vars[k];
  }
  sm.obs_extension.partial = obs_partial;

  sm.smooth_extension.decision = series_decision(sv.pow(4.0 * index) * tv);
  sm.smooth_extension.partial =
      kernels::sum(sm.ext_smooth_vars.data(), sm.ext_smooth_vars.size());

  sm.white_noise_series.decision = series_decision(sv.pow(2.0 * (2.0 * index - 1.0)));
  double wn_partial = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    wn_partial += std::pow(m.system.values[k], 2.0 * (2.0 * index - 1.0));
  }
  sm.white_noise_series.partial = wn_partial;
  return sm;
}

SeriesCheck check_hs_extended(const ScaleModel& sm) {
  const ModelSpec& m = sm.base;
  const std::size_t n = m.truncation();
  const DecayClass sv = decay_class(m.system.family);
  const DecayClass ov = decay_class(m.obs_noise.family);
  const DecayClass tv = decay_class(m.smooth_noise.family);

  SeriesCheck check;
  // Terms tau^2 s^(4n-2) / (tau + s^2 mu): dominant denominator class rules.
  check.decision = ratio_series_decision(tv * tv * sv.pow(4.0 * sm.index - 2.0), tv,
                                         sv * sv * ov);
  double partial = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double s = m.system.values[k];
    const double tau = m.smooth_noise.span_vars[k];
    const double mu = m.obs_noise.span_vars[k];
    const double lead = tau * std::pow(s, 2.0 * (2.0 * sm.index - 1.0));
    const double shrinkf = tau / (tau + s * s * mu);
    partial += lead * shrinkf;
  }
  check.partial = partial;
  return check;
}

DiagonalOperator optimal_smoother_extended(const ScaleModel& sm) {
  // The s^(4n) factors cancel exactly, so divide the base spectra directly.
  return optimal_smoother(sm.base);
}

HilbertElement conditional_expectation_extended(const ScaleModel& sm,
                                                const HilbertElement& x) {
  // tau s^(4n) / (tau s^(4n) + s^(4n) s^2 mu) reduces to the base shrink
  // factor; the extension changes the geometry, not the filter.
  return conditional_expectation(sm.base, x);
}

}  // namespace fhp
