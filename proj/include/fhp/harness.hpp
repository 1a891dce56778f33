#pragma once

// Experiment harness: configuration loading with environment overrides,
// dataset ingestion, deterministic Monte Carlo execution, and emission of
// CSV/JSON reports plus a digest-carrying run manifest. Given the same
// configuration and seed, every deterministic command writes byte-identical
// result files regardless of worker count.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fhp/model.hpp"

namespace fhp::harness {

// Configuration or validation failure; the CLI maps it to exit code 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Filesystem failure; the CLI maps it to exit code 3.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Command {
  Filter,
  VerifyOptimality,
  MonteCarlo,
  Admissibility,
  ScaleReport,
  HeatDemo,
  ClassicalHp,
};

std::string_view command_name(Command c);
Command parse_command(const std::string& name);

enum class DataFormat { Coefficients, Grid };

struct RunConfig {
  Command command = Command::MonteCarlo;

  // [model]
  std::size_t truncation = 0;
  std::size_t kernel_dim = 0;
  std::vector<double> mean_kernel;
  std::vector<double> kernel_vars;
  SequenceFamily singular_family;
  SequenceFamily obs_family;
  SequenceFamily smooth_family;
  bool has_model = false;

  // [heat]
  double observation_time = 1.0;
  double target_time = 0.0;
  std::size_t grid_points = 2048;
  bool has_heat = false;

  // [run]
  std::uint64_t seed = 0;
  std::size_t samples = 10000;
  std::size_t threads = 1;
  std::string output_dir = "out";
  bool strict = false;
  int scale_index = 1;
  int scale_max = 4;
  std::size_t candidates = 200;
  double alpha = 0.0;
  bool has_alpha = false;
  double mc_sigma = 3.0;
  std::string input_path;
  DataFormat input_format = DataFormat::Coefficients;
};

// Parses an INI-style file ([section] headers, key = value lines, '#'
// comments), applies FHP_* environment overrides (run.seed becomes
// FHP_RUN_SEED and so on), and validates every key against the schema.
// Unknown keys, missing required keys, and out-of-range values raise
// ConfigError naming the key and the violated constraint.
RunConfig load_config(const std::string& path);

// The model described by the [model] section. Raises ConfigError if the
// section is absent or incomplete.
ModelSpec build_model(const RunConfig& cfg);

// Flat key/value view of the effective configuration, for the manifest.
std::map<std::string, std::string> effective_config(const RunConfig& cfg);

// Coefficient rows "index,value": positive indices are span coordinates
// (1-based), indices <= 0 address kernel slot -index. Indices must be
// strictly increasing; missing rows default to zero; non-finite values are
// rejected with their row number.
HilbertElement ingest_coefficients(const std::string& path, std::size_t truncation,
                                   std::size_t kernel_dim);

// Grid rows "s,value" with s strictly increasing inside [0, pi]; projected
// onto the first `modes` sine modes by trapezoidal quadrature.
HilbertElement ingest_grid(const std::string& path, std::size_t modes);

// Plain series rows "index,value" with indices 1..T in order.
std::vector<double> ingest_series(const std::string& path);

struct MonteCarloStats {
  std::size_t samples = 0;
  // Span-coordinate moments, realized and expected.
  std::vector<double> mean_x, var_x, se_var_x, expected_var_x;
  std::vector<double> mean_y, var_y, cov_xy, se_cov_xy, expected_signal_var;
  // Kernel-coordinate moments of the observation.
  std::vector<double> kernel_mean_x, kernel_var_x, kernel_expected;
  // Filter-residual moment against the closed-form trace.
  double residual_mean = 0.0;
  double residual_se = 0.0;
  double expected_trace = 0.0;
  double zscore = 0.0;
  bool trace_pass = false;
};

// Deterministic Monte Carlo: sample keys depend only on (seed, index), all
// samples land in per-index slots, and the reduction is a fixed-shape
// pairwise tree, so the statistics are bit-identical for any worker count.
MonteCarloStats run_monte_carlo(const ModelSpec& m, std::size_t samples, std::uint64_t seed,
                                std::size_t threads, double sigma);

struct RunResult {
  int exit_code = 0;
  std::vector<std::string> warnings;
  std::string output_dir;
};

// Executes the configured command and writes its reports plus the manifest
// into cfg.output_dir. Throws ConfigError / IoError; returns exit_code 2
// when a warning was escalated by the strict flag.
RunResult run_command(const RunConfig& cfg);

// Fixed-shape pairwise summation; the reduction tree depends only on n.
double pairwise_sum(const double* a, std::size_t n);

// 17-significant-digit decimal rendering used by every CSV emitter.
std::string format_g17(double v);

// FNV-1a 64-bit content digest, rendered as 16 hex characters.
std::string fnv1a64_hex(std::string_view bytes);

}  // namespace fhp::harness
