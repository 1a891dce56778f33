#include "fhp/heat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fhp {

namespace {

double time_gap(const HeatProblem& p) {
  const double gap = p.observation_time - p.target_time;
  if (!(gap > 0.0)) {
    throw std::invalid_argument("heat problem: observation time must exceed target time");
  }
  return gap;
}

}  // namespace

std::size_t heat_mode_cap(double gap) {
  if (!(gap > 0.0)) throw std::invalid_argument("heat_mode_cap: time gap must be > 0");
  const double tiny = std::numeric_limits<double>::min();
  const double limit = -std::log(tiny);  // ~708.4
  auto underflows = [&](std::size_t n) {
    const double nn = static_cast<double>(n) * static_cast<double>(n);
    return std::exp(-nn * gap) < tiny;
  };
  std::size_t n = static_cast<std::size_t>(std::floor(std::sqrt(limit / gap))) + 1;
  while (n >= 1 && underflows(n)) --n;
  if (n == 0) {
    throw std::invalid_argument("heat_mode_cap: every mode underflows at this time gap");
  }
  return n;
}

SingularSystem build_heat_system(const HeatProblem& p) {
  if (p.truncation == 0) throw std::invalid_argument("heat problem: truncation must be >= 1");
  const double gap = time_gap(p);
  const std::size_t n = std::min(p.truncation, heat_mode_cap(gap));
  return SingularSystem::from_family(SequenceFamily::exponential(gap, /*quadratic=*/true),
                                     n, /*kernel_dim=*/0);
}

std::vector<double> heat_grid(std::size_t points) {
  if (points < 2) throw std::invalid_argument("heat_grid: need at least 2 points");
  std::vector<double> s(points);
  const double h = std::numbers::pi / static_cast<double>(points - 1);
  for (std::size_t j = 0; j < points; ++j) s[j] = static_cast<double>(j) * h;
  s.back() = std::numbers::pi;
  return s;
}

std::vector<double> synthesize_grid(const HilbertElement& h, std::size_t points) {
  const std::vector<double> s = heat_grid(points);
  const double amp = std::sqrt(2.0 / std::numbers::pi);
  std::vector<double> f(points, 0.0);
  for (std::size_t k = 0; k < h.span.size(); ++k) {
    const double c = amp * h.span[k];
    const double mode = static_cast<double>(k + 1);
    for (std::size_t j = 0; j < points; ++j) f[j] += c * std::sin(mode * s[j]);
  }
  return f;
}

HilbertElement analyze_grid(const std::vector<double>& s, const std::vector<double>& f,
                            std::size_t modes) {
  if (s.size() != f.size()) {
    throw std::invalid_argument("analyze_grid: node and value counts differ");
  }
  if (s.size() < 2) throw std::invalid_argument("analyze_grid: need at least 2 samples");
  const double pi = std::numbers::pi;
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (!std::isfinite(s[j]) || !std::isfinite(f[j])) {
      throw std::invalid_argument("analyze_grid: non-finite sample at row " +
                                  std::to_string(j + 1));
    }
    if (s[j] < 0.0 || s[j] > pi) {
      throw std::invalid_argument("analyze_grid: node outside [0, pi] at row " +
                                  std::to_string(j + 1));
    }
    if (j > 0 && s[j] <= s[j - 1]) {
      throw std::invalid_argument("analyze_grid: nodes must be strictly increasing at row " +
                                  std::to_string(j + 1));
    }
  }

  // Trapezoid weights; on a uniform grid the sine projection is then exact
  // for band-limited profiles by discrete orthogonality.
  std::vector<double> w(s.size(), 0.0);
  for (std::size_t j = 0; j + 1 < s.size(); ++j) {
    const double half = 0.5 * (s[j + 1] - s[j]);
    w[j] += half;
    w[j + 1] += half;
  }

  const double amp = std::sqrt(2.0 / pi);
  HilbertElement h = HilbertElement::zero(Space::Domain, 0, modes);
  for (std::size_t k = 0; k < modes; ++k) {
    const double mode = static_cast<double>(k + 1);
    double acc = 0.0;
    for (std::size_t j = 0; j < s.size(); ++j) {
      acc += w[j] * f[j] * (amp * std::sin(mode * s[j]));
    }
    h.span[k] = acc;
  }
  return h;
}

std::vector<double> heat_multipliers(const HeatProblem& p, const SequenceFamily& obs_noise,
                                     const SequenceFamily& smooth_noise) {
  const double gap = time_gap(p);
  const std::size_t n = std::min(p.truncation, heat_mode_cap(gap));
  std::vector<double> mult(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const double nn = static_cast<double>(k) * static_cast<double>(k);
    const double ratio = obs_noise.term(k) / smooth_noise.term(k);
    mult[k - 1] = 1.0 / (1.0 + ratio * std::exp(-2.0 * nn * gap));
  }
  return mult;
}

HilbertElement run_heat_filter(const HeatProblem& p, const SequenceFamily& obs_noise,
                               const SequenceFamily& smooth_noise, const HilbertElement& x) {
  const std::vector<double> mult = heat_multipliers(p, obs_noise, smooth_noise);
  if (x.space != Space::Domain || x.span.size() != mult.size() || !x.kernel.empty()) {
    throw std::invalid_argument("run_heat_filter: element does not match the capped system");
  }
  HilbertElement y = x;
  for (std::size_t k = 0; k < mult.size(); ++k) y.span[k] = mult[k] * x.span[k];
  return y;
}

}  // namespace fhp
