#include <algorithm>
#include <cmath>
#include <thread>

#include "emit.hpp"
#include "fhp/filter.hpp"
#include "fhp/harness.hpp"
#include "fhp/kernels.hpp"
#include "fhp/heat.hpp"
#include "fhp/rng.hpp"
#include "fhp/scale.hpp"

namespace fhp::harness {

namespace {

std::string decision_str(Decision d) { return std::string(decision_name(d)); }

void note_divergences(Emitter& em, const AdmissibilityReport& rep) {
  if (rep.obs_noise_trace.decision == Decision::ProvenDivergent) {
    em.warn("observation-noise covariance is not trace class");
  }
  if (rep.smooth_noise_trace.decision == Decision::ProvenDivergent) {
    em.warn("smoothness-noise covariance is not trace class");
  }
  if (rep.signal_trace.decision == Decision::ProvenDivergent) {
    em.warn("signal covariance is not trace class");
  }
  if (rep.conditioning_hs.decision == Decision::ProvenDivergent) {
    em.warn("conditioning operator is not Hilbert-Schmidt");
  }
}

nlohmann::ordered_json admissibility_json(const AdmissibilityReport& rep) {
  auto entry = [](const SeriesCheck& c) {
    return nlohmann::ordered_json{{"decision", decision_str(c.decision)},
                                  {"partial_sum", c.partial}};
  };
  return {{"obs_noise_trace", entry(rep.obs_noise_trace)},
          {"smooth_noise_trace", entry(rep.smooth_noise_trace)},
          {"signal_trace", entry(rep.signal_trace)},
          {"conditioning_hs", entry(rep.conditioning_hs)}};
}

std::string admissibility_csv(const AdmissibilityReport& rep) {
  std::vector<std::vector<std::string>> rows;
  auto row = [&](const char* name, const SeriesCheck& c) {
    rows.push_back({name, decision_str(c.decision), format_g17(c.partial)});
  };
  row("obs_noise_trace", rep.obs_noise_trace);
  row("smooth_noise_trace", rep.smooth_noise_trace);
  row("signal_trace", rep.signal_trace);
  row("conditioning_hs", rep.conditioning_hs);
  return csv_table({"check", "decision", "partial_sum"}, rows);
}

HilbertElement load_observation(const RunConfig& cfg, const ModelSpec& m) {
  if (cfg.input_path.empty()) {
    return sample_pair(m, Rng::substream_key(cfg.seed, 0)).first;
  }
  if (cfg.input_format == DataFormat::Grid) {
    if (m.kernel_dim() != 0) {
      throw ConfigError("grid input requires a model with kernel_dim = 0");
    }
    return ingest_grid(cfg.input_path, m.truncation());
  }
  return ingest_coefficients(cfg.input_path, m.truncation(), m.kernel_dim());
}

void run_admissibility(const RunConfig& cfg, Emitter& em) {
  const ModelSpec m = build_model(cfg);
  const AdmissibilityReport rep = check_admissibility(m);
  note_divergences(em, rep);

  em.add("admissibility.csv", admissibility_csv(rep));

  std::vector<std::vector<std::string>> longrows;
  const DiagonalOperator qv = signal_covariance(m);
  for (std::size_t k = 0; k < m.truncation(); ++k) {
    longrows.push_back({"signal_var", std::to_string(k + 1), format_g17(qv.diag[k])});
  }
  for (std::size_t k = 0; k < m.truncation(); ++k) {
    const double s = m.system.values[k];
    const double tau = m.smooth_noise.span_vars[k];
    const double mu = m.obs_noise.span_vars[k];
    const double term = (tau / (s * s)) * (tau / (tau + s * s * mu));
    longrows.push_back({"hs_term", std::to_string(k + 1), format_g17(term)});
  }
  em.add("series_long.csv", csv_table({"series", "index", "value"}, longrows));

  nlohmann::ordered_json summary;
  summary["command"] = "admissibility";
  summary["truncation"] = m.truncation();
  summary["admissibility"] = admissibility_json(rep);
  summary["any_divergent"] = rep.any_divergent();
  em.add_json("summary.json", summary);
}

void run_filter(const RunConfig& cfg, Emitter& em) {
  const ModelSpec m = build_model(cfg);
  if (cfg.input_path.empty()) {
    throw ConfigError("filter requires run.input (or --input) with the observation");
  }
  const AdmissibilityReport rep = check_admissibility(m);
  note_divergences(em, rep);

  const HilbertElement x = load_observation(cfg, m);
  const HilbertElement filtered = smooth(m.system, optimal_smoother(m), x);
  const HilbertElement conditional = conditional_expectation(m, x);
  const HilbertElement residual = filtered - conditional;

  std::vector<std::vector<std::string>> rows;
  for (std::size_t j = m.kernel_dim(); j-- > 0;) {
    const long long idx = -static_cast<long long>(j);
    rows.push_back({std::to_string(idx), format_g17(x.kernel[j]),
                    format_g17(filtered.kernel[j]), format_g17(conditional.kernel[j]),
                    format_g17(residual.kernel[j])});
  }
  for (std::size_t k = 0; k < m.truncation(); ++k) {
    rows.push_back({std::to_string(k + 1), format_g17(x.span[k]),
                    format_g17(filtered.span[k]), format_g17(conditional.span[k]),
                    format_g17(residual.span[k])});
  }
  em.add("coefficients.csv",
         csv_table({"index", "observed", "filtered", "conditional", "residual"}, rows));

  std::vector<std::vector<std::string>> mrows;
  for (std::size_t k = 0; k < m.truncation(); ++k) {
    const double s = m.system.values[k];
    const double tau = m.smooth_noise.span_vars[k];
    const double mu = m.obs_noise.span_vars[k];
    mrows.push_back({std::to_string(k + 1), format_g17(s),
                     format_g17(tau / (tau + s * s * mu))});
  }
  em.add("multipliers.csv", csv_table({"k", "singular_value", "multiplier"}, mrows));

  std::vector<double> span_res(residual.span);
  nlohmann::ordered_json summary;
  summary["command"] = "filter";
  summary["observed_norm"] = x.norm();
  summary["filtered_norm"] = filtered.norm();
  summary["conditional_norm"] = conditional.norm();
  summary["residual_norm"] = residual.norm();
  summary["residual_span_norm"] =
      std::sqrt(fhp::kernels::dot(span_res.data(), span_res.data(), span_res.size()));
  summary["admissibility"] = admissibility_json(rep);
  em.add_json("summary.json", summary);
}

void run_verify_optimality(const RunConfig& cfg, Emitter& em) {
  const ModelSpec m = build_model(cfg);
  const AdmissibilityReport rep = check_admissibility(m);
  note_divergences(em, rep);

  const HilbertElement x = load_observation(cfg, m);
  const DiagonalOperator best = optimal_smoother(m);
  const std::size_t n = m.truncation();

  std::vector<DiagonalOperator> candidates;
  std::vector<std::string> kinds;
  candidates.push_back(DiagonalOperator::codomain_op(std::vector<double>(n, 0.0)));
  kinds.push_back("zero");
  for (double c : {0.25, 0.5, 2.0, 4.0}) {
    std::vector<double> diag(n);
    for (std::size_t k = 0; k < n; ++k) diag[k] = c * best.diag[k];
    candidates.push_back(DiagonalOperator::codomain_op(std::move(diag)));
    kinds.push_back("scaled");
  }
  Rng rng(Rng::substream_key(cfg.seed, 1));
  double cap = 1.0;
  for (double b : best.diag) cap = std::max(cap, b);
  for (std::size_t i = 0; i < cfg.candidates; ++i) {
    std::vector<double> diag(n);
    if (i % 2 == 0) {
      for (std::size_t k = 0; k < n; ++k) {
        diag[k] = best.diag[k] * std::exp(0.75 * rng.next_normal());
      }
    } else {
      for (std::size_t k = 0; k < n; ++k) diag[k] = 2.0 * cap * rng.next_uniform();
    }
    candidates.push_back(DiagonalOperator::codomain_op(std::move(diag)));
    kinds.push_back("random");
  }

  const OptimalityReport report = verify_optimality(m, x, candidates);

  std::vector<std::vector<std::string>> rows;
  for (const OptimalityEntry& e : report.candidates) {
    rows.push_back({std::to_string(e.index), kinds[e.index], format_g17(e.distance)});
  }
  em.add("optimality.csv", csv_table({"candidate", "kind", "distance"}, rows));

  const double attainment_gap = std::abs(report.optimal_distance - report.kernel_gap);
  nlohmann::ordered_json summary;
  summary["command"] = "verify-optimality";
  summary["candidates"] = candidates.size();
  summary["optimal_distance"] = report.optimal_distance;
  summary["kernel_gap"] = report.kernel_gap;
  summary["attainment_gap"] = attainment_gap;
  summary["violations"] = report.violations;
  summary["pass"] =
      report.violations == 0 && attainment_gap <= 1e-12 * (1.0 + x.norm());
  summary["admissibility"] = admissibility_json(rep);
  em.add_json("summary.json", summary);
}

void run_monte_carlo_cmd(const RunConfig& cfg, Emitter& em) {
  const ModelSpec m = build_model(cfg);
  const AdmissibilityReport rep = check_admissibility(m);
  note_divergences(em, rep);

  const MonteCarloStats st =
      run_monte_carlo(m, cfg.samples, cfg.seed, cfg.threads, cfg.mc_sigma);

  std::vector<std::vector<std::string>> rows;
  for (std::size_t k = 0; k < m.truncation(); ++k) {
    rows.push_back({std::to_string(k + 1), format_g17(m.system.values[k]),
                    format_g17(m.obs_noise.span_vars[k]),
                    format_g17(m.smooth_noise.span_vars[k]), format_g17(st.mean_x[k]),
                    format_g17(st.var_x[k]), format_g17(st.se_var_x[k]),
                    format_g17(st.expected_var_x[k]), format_g17(st.mean_y[k]),
                    format_g17(st.var_y[k]), format_g17(st.cov_xy[k]),
                    format_g17(st.se_cov_xy[k]), format_g17(st.expected_signal_var[k])});
  }
  em.add("span_moments.csv",
         csv_table({"k", "singular_value", "obs_var", "smooth_var", "mean_x", "var_x",
                    "se_var_x", "expected_var_x", "mean_y", "var_y", "cov_xy", "se_cov_xy",
                    "expected_signal_var"},
                   rows));

  std::vector<std::vector<std::string>> krows;
  for (std::size_t j = 0; j < m.kernel_dim(); ++j) {
    krows.push_back({std::to_string(j), format_g17(st.kernel_mean_x[j]),
                     format_g17(st.kernel_var_x[j]), format_g17(st.kernel_expected[j])});
  }
  em.add("kernel_moments.csv",
         csv_table({"slot", "mean_x", "var_x", "expected_var"}, krows));

  em.add("residual.csv",
         csv_table({"samples", "mean_sq_norm", "std_error", "expected_trace", "zscore",
                    "pass"},
                   {{std::to_string(st.samples), format_g17(st.residual_mean),
                     format_g17(st.residual_se), format_g17(st.expected_trace),
                     format_g17(st.zscore), st.trace_pass ? "true" : "false"}}));

  std::vector<std::vector<std::string>> longrows;
  auto series = [&](const char* name, const std::vector<double>& v) {
    for (std::size_t k = 0; k < v.size(); ++k) {
      longrows.push_back({name, std::to_string(k + 1), format_g17(v[k])});
    }
  };
  series("var_x", st.var_x);
  series("expected_var_x", st.expected_var_x);
  series("cov_xy", st.cov_xy);
  series("expected_signal_var", st.expected_signal_var);
  em.add("series_long.csv", csv_table({"series", "index", "value"}, longrows));

  nlohmann::ordered_json summary;
  summary["command"] = "monte-carlo";
  summary["samples"] = st.samples;
  summary["seed"] = cfg.seed;
  summary["residual"] ={{"mean_sq_norm", st.residual_mean},
                         {"std_error", st.residual_se},
                         {"expected_trace", st.expected_trace},
                         {"zscore", st.zscore},
                         {"pass", st.trace_pass}};
  summary["admissibility"] = admissibility_json(rep);
  em.add_json("summary.json", summary);
}

void run_scale_report(const RunConfig& cfg, Emitter& em) {
  const ModelSpec m = build_model(cfg);
  const DiagonalOperator base = optimal_smoother(m);

  std::vector<std::vector<std::string>> rows;
  nlohmann::ordered_json levels = nlohmann::ordered_json::array();
  for (int idx = 1; idx <= cfg.scale_max; ++idx) {
    const ScaleModel sm = extend_model(m, idx);
    const SeriesCheck hs = check_hs_extended(sm);
    const DiagonalOperator ext = optimal_smoother_extended(sm);
    double max_rel = 0.0;
    for (std::size_t k = 0; k < ext.diag.size(); ++k) {
      const double denom = std::max(std::abs(base.diag[k]), 1e-300);
      max_rel = std::max(max_rel, std::abs(ext.diag[k] - base.diag[k]) / denom);
    }
    rows.push_back({std::to_string(idx), decision_str(sm.obs_extension.decision),
                    format_g17(sm.obs_extension.partial),
                    decision_str(sm.smooth_extension.decision),
                    format_g17(sm.smooth_extension.partial),
                    decision_str(sm.white_noise_series.decision),
                    format_g17(sm.white_noise_series.partial), decision_str(hs.decision),
                    format_g17(hs.partial), format_g17(max_rel)});
    levels.push_back({{"index", idx},
                      {"obs_extension", decision_str(sm.obs_extension.decision)},
                      {"smooth_extension", decision_str(sm.smooth_extension.decision)},
                      {"white_noise_series", decision_str(sm.white_noise_series.decision)},
                      {"hs_extended", decision_str(hs.decision)},
                      {"smoother_max_rel_diff", max_rel}});
  }
  em.add("scale_report.csv",
         csv_table({"n", "obs_extension", "obs_partial", "smooth_extension",
                    "smooth_partial", "white_noise_series", "white_partial", "hs_extended",
                    "hs_partial", "smoother_max_rel_diff"},
                   rows));

  const ScaleModel focus = extend_model(m, cfg.scale_index);
  std::vector<std::vector<std::string>> frows;
  for (std::size_t k = 0; k < m.truncation(); ++k) {
    frows.push_back({std::to_string(k + 1), format_g17(m.system.values[k]),
                     format_g17(focus.ext_obs_vars[k]),
                     format_g17(focus.ext_smooth_vars[k]),
                     format_g17(focus.ext_signal_vars[k])});
  }
  em.add("extended_covariances.csv",
         csv_table({"k", "singular_value", "ext_obs_var", "ext_smooth_var",
                    "ext_signal_var"},
                   frows));

  nlohmann::ordered_json summary;
  summary["command"] = "scale-report";
  summary["focus_index"] = cfg.scale_index;
  summary["levels"] = levels;
  em.add_json("summary.json", summary);
}

void run_heat_demo(const RunConfig& cfg, Emitter& em) {
  if (!cfg.has_heat) throw ConfigError("heat-demo requires a [heat] section");
  if (cfg.truncation == 0) throw ConfigError("heat-demo requires model.truncation");
  if (cfg.kernel_dim != 0) {
    throw ConfigError("heat-demo requires model.kernel_dim = 0 (the heat map is injective)");
  }

  HeatProblem p;
  p.observation_time = cfg.observation_time;
  p.target_time = cfg.target_time;
  p.truncation = cfg.truncation;
  p.grid_points = cfg.grid_points;

  const SingularSystem sys = build_heat_system(p);
  if (sys.truncation < cfg.truncation) {
    em.warn("heat truncation capped at " + std::to_string(sys.truncation) +
            " modes; higher modes underflow");
  }

  const ModelSpec m = ModelSpec::make(
      sys, {}, DiagonalCovariance::domain_cov(cfg.obs_family, sys.truncation, {}),
      DiagonalCovariance::codomain_cov(cfg.smooth_family, sys.truncation));
  const AdmissibilityReport rep = check_admissibility(m);
  note_divergences(em, rep);

  HilbertElement x = HilbertElement::zero(Space::Domain, 0, sys.truncation);
  HilbertElement signal = x;
  bool have_signal = false;
  if (cfg.input_path.empty()) {
    // Synthesize a smooth profile plus observation noise. Drawing the signal
    // from the generative model itself is hopeless here: its coefficient
    // variances grow like exp(2 n^2 gap), which is exactly the ill-posedness
    // the admissibility warnings report.
    Rng rng(Rng::substream_key(cfg.seed, 0));
    for (std::size_t k = 0; k < sys.truncation; ++k) {
      const double n = static_cast<double>(k + 1);
      signal.span[k] = rng.next_normal() / (n * n);
    }
    x = signal;
    for (std::size_t k = 0; k < sys.truncation; ++k) {
      x.span[k] += std::sqrt(m.obs_noise.span_vars[k]) * rng.next_normal();
    }
    have_signal = true;
  } else if (cfg.input_format == DataFormat::Grid) {
    x = ingest_grid(cfg.input_path, sys.truncation);
  } else {
    x = ingest_coefficients(cfg.input_path, sys.truncation, 0);
  }

  const HilbertElement filtered = run_heat_filter(p, cfg.obs_family, cfg.smooth_family, x);
  const HilbertElement generic = smooth(sys, optimal_smoother(m), x);
  double max_dev = 0.0;
  for (std::size_t k = 0; k < sys.truncation; ++k) {
    max_dev = std::max(max_dev, std::abs(filtered.span[k] - generic.span[k]));
  }

  auto profile_csv = [&](const HilbertElement& h) {
    const std::vector<double> grid = heat_grid(cfg.grid_points);
    const std::vector<double> vals = synthesize_grid(h, cfg.grid_points);
    std::vector<std::vector<std::string>> rows;
    rows.reserve(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
      rows.push_back({format_g17(grid[j]), format_g17(vals[j])});
    }
    return csv_table({"s", "value"}, rows);
  };
  em.add("profile_observed.csv", profile_csv(x));
  em.add("profile_filtered.csv", profile_csv(filtered));
  if (have_signal) em.add("profile_signal.csv", profile_csv(signal));

  const std::vector<double> mult = heat_multipliers(p, cfg.obs_family, cfg.smooth_family);
  std::vector<std::vector<std::string>> mrows;
  for (std::size_t k = 0; k < mult.size(); ++k) {
    mrows.push_back({std::to_string(k + 1), format_g17(sys.values[k]),
                     format_g17(mult[k])});
  }
  em.add("multipliers.csv", csv_table({"n", "lambda", "multiplier"}, mrows));

  nlohmann::ordered_json summary;
  summary["command"] = "heat-demo";
  summary["time_gap"] = cfg.observation_time - cfg.target_time;
  summary["requested_modes"] = cfg.truncation;
  summary["used_modes"] = sys.truncation;
  summary["capped"] = sys.truncation < cfg.truncation;
  summary["closed_vs_generic_max_dev"] = max_dev;
  summary["observed_norm"] = x.norm();
  summary["filtered_norm"] = filtered.norm();
  summary["admissibility"] = admissibility_json(rep);
  em.add_json("summary.json", summary);
}

void run_classical_hp(const RunConfig& cfg, Emitter& em) {
  if (!cfg.has_alpha) throw ConfigError("classical-hp requires run.alpha (or --alpha)");
  if (cfg.input_path.empty()) {
    throw ConfigError("classical-hp requires run.input with the series");
  }
  const std::vector<double> series = ingest_series(cfg.input_path);
  if (series.size() < 3) {
    throw ConfigError("classical-hp needs at least 3 observations (got " +
                      std::to_string(series.size()) + ")");
  }
  const std::vector<double> trend = classical_hp(series, cfg.alpha);

  std::vector<std::vector<std::string>> rows;
  for (std::size_t t = 0; t < series.size(); ++t) {
    rows.push_back({std::to_string(t + 1), format_g17(series[t]), format_g17(trend[t]),
                    format_g17(series[t] - trend[t])});
  }
  em.add("trend.csv", csv_table({"t", "observed", "trend", "cycle"}, rows));

  nlohmann::ordered_json summary;
  summary["command"] = "classical-hp";
  summary["alpha"] = cfg.alpha;
  summary["length"] = series.size();
  em.add_json("summary.json", summary);
}

bool escalates_on_warning(Command c) {
  return c == Command::Filter || c == Command::MonteCarlo ||
         c == Command::VerifyOptimality;
}

}  // namespace

MonteCarloStats run_monte_carlo(const ModelSpec& m, std::size_t samples, std::uint64_t seed,
                                std::size_t threads, double sigma) {
  if (samples < 2) throw std::invalid_argument("run_monte_carlo: need at least 2 samples");
  const std::size_t n = m.truncation();
  const std::size_t d0 = m.kernel_dim();

  std::vector<std::vector<double>> xcol(n, std::vector<double>(samples));
  std::vector<std::vector<double>> ycol(n, std::vector<double>(samples));
  std::vector<std::vector<double>> kcol(d0, std::vector<double>(samples));
  std::vector<double> rsq(samples);

  auto worker = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      auto [x, y] = sample_pair(m, Rng::substream_key(seed, i));
      const HilbertElement r = filter_residual(m, x);
      rsq[i] = inner(r, r);
      for (std::size_t k = 0; k < n; ++k) {
        xcol[k][i] = x.span[k];
        ycol[k][i] = y.span[k];
      }
      for (std::size_t j = 0; j < d0; ++j) kcol[j][i] = x.kernel[j];
    }
  };

  const std::size_t nworkers = std::max<std::size_t>(1, std::min(threads, samples));
  if (nworkers == 1) {
    worker(0, samples);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nworkers);
    const std::size_t chunk = (samples + nworkers - 1) / nworkers;
    for (std::size_t w = 0; w < nworkers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(samples, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(worker, begin, end);
    }
    for (std::thread& t : pool) t.join();
  }

  // Single-threaded fixed-order reduction: results do not depend on how the
  // sampling loop was split above.
  MonteCarloStats st;
  st.samples = samples;
  const double ns = static_cast<double>(samples);
  std::vector<double> tmp(samples), tmp2(samples);

  auto mean_of = [&](const std::vector<double>& col) {
    return pairwise_sum(col.data(), samples) / ns;
  };
  auto sd_of_mean = [&](const std::vector<double>& col, double mean) {
    for (std::size_t i = 0; i < samples; ++i) {
      const double d = col[i] - mean;
      tmp2[i] = d * d;
    }
    const double var = pairwise_sum(tmp2.data(), samples) / (ns - 1.0);
    return std::sqrt(var / ns);
  };

  st.mean_x.resize(n);
  st.var_x.resize(n);
  st.se_var_x.resize(n);
  st.expected_var_x.resize(n);
  st.mean_y.resize(n);
  st.var_y.resize(n);
  st.cov_xy.resize(n);
  st.se_cov_xy.resize(n);
  st.expected_signal_var.resize(n);
  const DiagonalOperator qv = signal_covariance(m);
  for (std::size_t k = 0; k < n; ++k) {
    const double mx = mean_of(xcol[k]);
    const double my = mean_of(ycol[k]);
    st.mean_x[k] = mx;
    st.mean_y[k] = my;

    for (std::size_t i = 0; i < samples; ++i) {
      const double d = xcol[k][i] - mx;
      tmp[i] = d * d;
    }
    st.var_x[k] = pairwise_sum(tmp.data(), samples) / (ns - 1.0);
    st.se_var_x[k] = sd_of_mean(tmp, pairwise_sum(tmp.data(), samples) / ns);

    for (std::size_t i = 0; i < samples; ++i) {
      const double d = ycol[k][i] - my;
      tmp[i] = d * d;
    }
    st.var_y[k] = pairwise_sum(tmp.data(), samples) / (ns - 1.0);

    for (std::size_t i = 0; i < samples; ++i) {
      tmp[i] = (xcol[k][i] - mx) * (ycol[k][i] - my);
    }
    st.cov_xy[k] = pairwise_sum(tmp.data(), samples) / (ns - 1.0);
    st.se_cov_xy[k] = sd_of_mean(tmp, pairwise_sum(tmp.data(), samples) / ns);

    st.expected_var_x[k] = m.obs_noise.span_vars[k] + qv.diag[k];
    st.expected_signal_var[k] = qv.diag[k];
  }

  st.kernel_mean_x.resize(d0);
  st.kernel_var_x.resize(d0);
  st.kernel_expected.resize(d0);
  for (std::size_t j = 0; j < d0; ++j) {
    const double mk = mean_of(kcol[j]);
    st.kernel_mean_x[j] = mk;
    for (std::size_t i = 0; i < samples; ++i) {
      const double d = kcol[j][i] - mk;
      tmp[i] = d * d;
    }
    st.kernel_var_x[j] = pairwise_sum(tmp.data(), samples) / (ns - 1.0);
    st.kernel_expected[j] = m.obs_noise.kernel_vars[j];
  }

  st.residual_mean = pairwise_sum(rsq.data(), samples) / ns;
  st.residual_se = sd_of_mean(rsq, st.residual_mean);
  st.expected_trace = residual_covariance(m).trace;
  const double diff = st.residual_mean - st.expected_trace;
  // Absolute floor below any plausible kernel variance: with a zero trace the
  // residual is pure rounding noise whose standard error is not a meaningful
  // yardstick.
  const double floor = 1e-20 * (1.0 + std::abs(st.expected_trace));
  st.zscore = (st.residual_se > 0.0) ? diff / st.residual_se : 0.0;
  st.trace_pass = std::abs(diff) <= sigma * st.residual_se + floor;
  return st;
}

RunResult run_command(const RunConfig& cfg) {
  Emitter em(cfg);

  switch (cfg.command) {
    case Command::Admissibility:
      run_admissibility(cfg, em);
      break;
    case Command::Filter:
      run_filter(cfg, em);
      break;
    case Command::VerifyOptimality:
      run_verify_optimality(cfg, em);
      break;
    case Command::MonteCarlo:
      run_monte_carlo_cmd(cfg, em);
      break;
    case Command::ScaleReport:
      run_scale_report(cfg, em);
      break;
    case Command::HeatDemo:
      run_heat_demo(cfg, em);
      break;
    case Command::ClassicalHp:
      run_classical_hp(cfg, em);
      break;
  }

  if (cfg.strict && escalates_on_warning(cfg.command) && !em.warnings().empty()) {
    em.finalize("failed_strict");
    return {2, em.warnings(), cfg.output_dir};
  }
  em.finalize("completed");
  return {0, em.warnings(), cfg.output_dir};
}

}  // namespace fhp::harness
