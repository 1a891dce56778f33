#pragma once

// Worked inverse problem: recover the temperature profile of a rod at an
// earlier time from a noisy later observation. On [0, pi] with zero boundary,
// the solution operator from time t0 to time t1 > t0 is diagonal in the sine
// basis with singular values exp(-n^2 (t1 - t0)); running it backward is the
// canonical severely ill-posed problem the filter regularizes.

#include <cstddef>
#include <vector>

#include "fhp/model.hpp"
#include "fhp/spectral.hpp"

namespace fhp {

struct HeatProblem {
  double observation_time = 1.0;  // when the noisy profile is measured
  double target_time = 0.0;       // when the signal profile is sought
  std::size_t truncation = 16;    // requested number of sine modes
  std::size_t grid_points = 2048; // uniform plot grid on [0, pi]
};

// Largest mode index whose singular value exp(-n^2 gap) is still a normal
// double. Throws if even the first mode underflows.
std::size_t heat_mode_cap(double time_gap);

// Singular system of the backward map, with the truncation capped at
// heat_mode_cap so no stored singular value underflows. Kernel dimension is
// zero: the forward heat map is injective.
SingularSystem build_heat_system(const HeatProblem& p);

// Uniform grid including both endpoints.
std::vector<double> heat_grid(std::size_t points);

// Pointwise values of sum_n c_n sqrt(2/pi) sin(n s) on the uniform grid.
std::vector<double> synthesize_grid(const HilbertElement& h, std::size_t points);

// Sine-basis coefficients of samples (s_j, f_j) by trapezoidal projection.
// Nodes must be finite, strictly increasing, and inside [0, pi].
HilbertElement analyze_grid(const std::vector<double>& s, const std::vector<double>& f,
                            std::size_t modes);

// Filter factors 1 / (1 + (mu_n / tau_n) exp(-2 n^2 gap)), evaluated in
// closed form (exp of the doubled exponent, not the square of the singular
// value).
std::vector<double> heat_multipliers(const HeatProblem& p, const SequenceFamily& obs_noise,
                                     const SequenceFamily& smooth_noise);

// Closed-form application of the optimal filter to observed coefficients x.
// Agrees coefficientwise with the generic pipeline built from
// build_heat_system + optimal_smoother + smooth.
HilbertElement run_heat_filter(const HeatProblem& p, const SequenceFamily& obs_noise,
                               const SequenceFamily& smooth_noise, const HilbertElement& x);

}  // namespace fhp
