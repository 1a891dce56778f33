#include "fhp/filter.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "fhp/kernels.hpp"

namespace fhp {

double penalized_objective(const SingularSystem& sys, const DiagonalOperator& weight,
                           const HilbertElement& x, const HilbertElement& y) {
  if (weight.space != Space::Codomain || weight.diag.size() != sys.truncation) {
    throw std::invalid_argument("penalized_objective: weight does not match system");
  }
  if (!weight.positive_semidefinite()) {
    throw std::invalid_argument("penalized_objective: weight must be positive semidefinite");
  }
  HilbertElement diff = x - y;
  const double fidelity = inner(diff, diff);
  // <A y, W A y> = sum_k w_k s_k^2 y_k^2.
  std::vector<double> ay(sys.truncation);
  kernels::mul(sys.values.data(), y.span.data(), ay.data(), sys.truncation);
  const double penalty =
      kernels::weighted_dot(weight.diag.data(), ay.data(), ay.data(), sys.truncation);
  return fidelity + penalty;
}

HilbertElement smooth(const SingularSystem& sys, const DiagonalOperator& weight,
                      const HilbertElement& x) {
  if (weight.space != Space::Codomain || weight.diag.size() != sys.truncation) {
    throw std::invalid_argument("smooth: weight does not match system");
  }
  if (!weight.positive_semidefinite()) {
    throw std::invalid_argument("smooth: weight must be positive semidefinite");
  }
  if (x.space != Space::Domain || x.span.size() != sys.truncation ||
      x.kernel.size() != sys.kernel_dim) {
    throw std::invalid_argument("smooth: element does not match system");
  }
  HilbertElement y = x;  // kernel block passes through unchanged
  kernels::tikhonov_apply(sys.values.data(), weight.diag.data(), x.span.data(),
                          y.span.data(), sys.truncation);
  return y;
}

DiagonalOperator optimal_smoother(const ModelSpec& m) {
  const std::size_t n = m.truncation();
  std::vector<double> diag(n);
  for (std::size_t k = 0; k < n; ++k) {
    diag[k] = m.obs_noise.span_vars[k] / m.smooth_noise.span_vars[k];
  }
  return DiagonalOperator::codomain_op(std::move(diag));
}

HilbertElement filter_residual(const ModelSpec& m, const HilbertElement& x) {
  return smooth(m.system, optimal_smoother(m), x) - conditional_expectation(m, x);
}

ResidualCovariance residual_covariance(const ModelSpec& m) {
  DiagonalOperator op = DiagonalOperator::domain_op(
      std::vector<double>(m.truncation(), 0.0), m.obs_noise.kernel_vars);
  const double trace =
      kernels::sum(m.obs_noise.kernel_vars.data(), m.obs_noise.kernel_vars.size());
  return {std::move(op), trace};
}

OptimalityReport verify_optimality(const ModelSpec& m, const HilbertElement& x,
                                   const std::vector<DiagonalOperator>& candidates,
                                   double tolerance) {
  const HilbertElement target = conditional_expectation(m, x);

  OptimalityReport report;
  report.optimal_distance = (smooth(m.system, optimal_smoother(m), x) - target).norm();

  std::vector<double> gap(m.kernel_dim());
  kernels::sub(x.kernel.data(), m.mean_kernel.data(), gap.data(), gap.size());
  report.kernel_gap = std::sqrt(kernels::dot(gap.data(), gap.data(), gap.size()));

  report.violations = 0;
  report.candidates.reserve(candidates.size());
  const double slack = tolerance * (1.0 + x.norm());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const double d = (smooth(m.system, candidates[i], x) - target).norm();
    if (d < report.kernel_gap - slack) ++report.violations;
    report.candidates.push_back({i, d});
  }
  return report;
}

std::vector<double> classical_hp(const std::vector<double>& series, double alpha) {
  const std::size_t t = series.size();
  if (t < 3) throw std::invalid_argument("classical_hp: need at least 3 observations");
  if (!(alpha > 0.0)) throw std::invalid_argument("classical_hp: alpha must be > 0");

  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(t - 2),
                                            static_cast<Eigen::Index>(t));
  for (Eigen::Index r = 0; r < p.rows(); ++r) {
    p(r, r) = 1.0;
    p(r, r + 1) = -2.0;
    p(r, r + 2) = 1.0;
  }
  Eigen::MatrixXd lhs =
      Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(t)) +
      alpha * (p.transpose() * p);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(t));
  for (std::size_t i = 0; i < t; ++i) rhs(static_cast<Eigen::Index>(i)) = series[i];

  Eigen::VectorXd sol = lhs.llt().solve(rhs);
  return std::vector<double>(sol.data(), sol.data() + sol.size());
}

}  // namespace fhp
