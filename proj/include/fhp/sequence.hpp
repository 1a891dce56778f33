#pragma once

// Parametric positive nonincreasing sequences. Singular values and covariance
// eigenvalues are generated from these families; keeping the family around
// (not just the realized prefix) is what lets the admissibility checks decide
// series convergence analytically instead of guessing from partial sums.

#include <cstddef>
#include <string_view>
#include <vector>

namespace fhp {

// Outcome of an analytic series test. Explicit families carry no tail
// information, so sums over them can only report partial sums.
enum class Decision { ProvenConvergent, ProvenDivergent, UnknownExplicitFamily };

std::string_view decision_name(Decision d);

struct SequenceFamily {
  enum class Kind { PowerLaw, Exponential, Constant, Explicit };

  Kind kind = Kind::Constant;
  double scale = 1.0;      // positive multiplier; the value itself for Constant
  double exponent = 0.0;   // PowerLaw: scale * k^-exponent, exponent > 0
  double rate = 0.0;       // Exponential: scale * exp(-rate*k) or exp(-rate*k^2)
  bool quadratic = false;  // Exponential only
  std::vector<double> explicit_terms;

  static SequenceFamily power_law(double exponent, double scale = 1.0);
  static SequenceFamily exponential(double rate, bool quadratic = false, double scale = 1.0);
  static SequenceFamily constant(double value);
  static SequenceFamily explicit_values(std::vector<double> values);

  // Term for 1-based index k. Explicit families are defined only up to their
  // stored length.
  double term(std::size_t k) const;
  std::vector<double> realize(std::size_t n) const;

  bool is_explicit() const { return kind == Kind::Explicit; }
};

// Asymptotic class c * k^power * exp(-(lin*k + quad*k^2)) of a sequence, or
// non-analytic for Explicit families. Closed under product, quotient, and
// real powers, which covers every derived series the model checks.
struct DecayClass {
  bool analytic = true;
  double power = 0.0;
  double lin = 0.0;
  double quad = 0.0;

  DecayClass pow(double e) const;
  friend DecayClass operator*(const DecayClass& a, const DecayClass& b);
  friend DecayClass operator/(const DecayClass& a, const DecayClass& b);

  // Sign of the limit behaviour of the terms: -1 tends to zero, 0 tends to a
  // finite positive constant, +1 grows without bound.
  int limit_sign() const;
};

DecayClass decay_class(const SequenceFamily& f);

// Does sum_k of a class-`c` sequence converge? The class decides exactly:
// any exponential factor dominates, otherwise the p-series test applies.
Decision series_decision(const DecayClass& c);

// Decision for sum_k num_k / (d1_k + d2_k): the dominant denominator term is
// identified by the limit of d1/d2, reducing to a single-class decision.
Decision ratio_series_decision(const DecayClass& num, const DecayClass& d1,
                               const DecayClass& d2);

}  // namespace fhp
