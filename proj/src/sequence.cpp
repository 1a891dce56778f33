#include "fhp/sequence.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fhp {

std::string_view decision_name(Decision d) {
  switch (d) {
    case Decision::ProvenConvergent:
      return "ProvenConvergent";
    case Decision::ProvenDivergent:
      return "ProvenDivergent";
    case Decision::UnknownExplicitFamily:
      return "UnknownExplicitFamily";
  }
  return "unknown";
}

SequenceFamily SequenceFamily::power_law(double exponent, double scale) {
  if (!(exponent > 0.0)) throw std::invalid_argument("power-law exponent must be > 0");
  if (!(scale > 0.0)) throw std::invalid_argument("sequence scale must be > 0");
  SequenceFamily f;
  f.kind = Kind::PowerLaw;
  f.exponent = exponent;
  f.scale = scale;
  return f;
}

SequenceFamily SequenceFamily::exponential(double rate, bool quadratic, double scale) {
  if (!(rate > 0.0)) throw std::invalid_argument("exponential rate must be > 0");
  if (!(scale > 0.0)) throw std::invalid_argument("sequence scale must be > 0");
  SequenceFamily f;
  f.kind = Kind::Exponential;
  f.rate = rate;
  f.quadratic = quadratic;
  f.scale = scale;
  return f;
}

SequenceFamily SequenceFamily::constant(double value) {
  if (!(value > 0.0)) throw std::invalid_argument("constant sequence value must be > 0");
  SequenceFamily f;
  f.kind = Kind::Constant;
  f.scale = value;
  return f;
}

SequenceFamily SequenceFamily::explicit_values(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("explicit sequence must be nonempty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0)) {
      throw std::invalid_argument("explicit sequence values must be strictly positive");
    }
    if (i > 0 && values[i] > values[i - 1]) {
      throw std::invalid_argument("explicit sequence values must be nonincreasing");
    }
  }
  SequenceFamily f;
  f.kind = Kind::Explicit;
  f.explicit_terms = std::move(values);
  return f;
}

double SequenceFamily::term(std::size_t k) const {
  if (k == 0) throw std::invalid_argument("sequence index is 1-based");
  switch (kind) {
    case Kind::PowerLaw:
      return scale * std::pow(static_cast<double>(k), -exponent);
    case Kind::Exponential: {
      double t = quadratic ? static_cast<double>(k) * static_cast<double>(k)
                           : static_cast<double>(k);
      return scale * std::exp(-rate * t);
    }
    case Kind::Constant:
      return scale;
    case Kind::Explicit:
      if (k > explicit_terms.size()) {
        throw std::invalid_argument("explicit sequence has no term " + std::to_string(k));
      }
      return explicit_terms[k - 1];
  }
  throw std::logic_error("unreachable sequence kind");
}

std::vector<double> SequenceFamily::realize(std::size_t n) const {
  std::vector<double> out(n);
  for (std::size_t k = 1; k <= n; ++k) out[k - 1] = term(k);
  return out;
}

DecayClass DecayClass::pow(double e) const {
  DecayClass r = *this;
  r.power *= e;
  r.lin *= e;
  r.quad *= e;
  return r;
}

DecayClass operator*(const DecayClass& a, const DecayClass& b) {
  DecayClass r;
  r.analytic = a.analytic && b.analytic;
  r.power = a.power + b.power;
  r.lin = a.lin + b.lin;
  r.quad = a.quad + b.quad;
  return r;
}

DecayClass operator/(const DecayClass& a, const DecayClass& b) {
  DecayClass r;
  r.analytic = a.analytic && b.analytic;
  r.power = a.power - b.power;
  r.lin = a.lin - b.lin;
  r.quad = a.quad - b.quad;
  return r;
}

int DecayClass::limit_sign() const {
  if (quad != 0.0) return quad > 0.0 ? -1 : 1;
  if (lin != 0.0) return lin > 0.0 ? -1 : 1;
  if (power != 0.0) return power < 0.0 ? -1 : 1;
  return 0;
}

DecayClass decay_class(const SequenceFamily& f) {
  DecayClass c;
  switch (f.kind) {
    case SequenceFamily::Kind::PowerLaw:
      c.power = -f.exponent;
      return c;
    case SequenceFamily::Kind::Exponential:
      if (f.quadratic) {
        c.quad = f.rate;
      } else {
        c.lin = f.rate;
      }
      return c;
    case SequenceFamily::Kind::Constant:
      return c;
    case SequenceFamily::Kind::Explicit:
      c.analytic = false;
      return c;
  }
  throw std::logic_error("unreachable sequence kind");
}

Decision series_decision(const DecayClass& c) {
  if (!c.analytic) return Decision::UnknownExplicitFamily;
  if (c.quad != 0.0) {
    return c.quad > 0.0 ? Decision::ProvenConvergent : Decision::ProvenDivergent;
  }
  if (c.lin != 0.0) {
    return c.lin > 0.0 ? Decision::ProvenConvergent : Decision::ProvenDivergent;
  }
  // Pure power: p-series, convergent exactly when the exponent is < -1.
  return c.power < -1.0 ? Decision::ProvenConvergent : Decision::ProvenDivergent;
}

Decision ratio_series_decision(const DecayClass& num, const DecayClass& d1,
                               const DecayClass& d2) {
  if (!num.analytic || !d1.analytic || !d2.analytic) {
    return Decision::UnknownExplicitFamily;
  }
  // The slower-decaying denominator term controls the tail. When both share
  // the same class the constants differ but not the decision.
  int cmp = (d1 / d2).limit_sign();
  const DecayClass& dominant = (cmp >= 0) ? d1 : d2;
  return series_decision(num / dominant);
}

}  // namespace fhp
