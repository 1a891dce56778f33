// INI-style configuration with a closed key schema. Values are validated
// with diagnostics that name the offending key and the violated constraint;
// any key can be overridden through the environment (model.lambda.exponent
// reads FHP_MODEL_LAMBDA_EXPONENT, and so on), with overrides applied before
// validation so they obey the same constraints.

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "fhp/harness.hpp"

namespace fhp::harness {

namespace {

const std::set<std::string> kKnownKeys = {
    "model.truncation",
    "model.kernel_dim",
    "model.y0_kernel",
    "model.kernel_vars",
    "model.lambda.family",
    "model.lambda.exponent",
    "model.lambda.rate",
    "model.lambda.quadratic",
    "model.lambda.value",
    "model.lambda.values",
    "model.lambda.scale",
    "model.mu.family",
    "model.mu.exponent",
    "model.mu.rate",
    "model.mu.quadratic",
    "model.mu.value",
    "model.mu.values",
    "model.mu.scale",
    "model.tau.family",
    "model.tau.exponent",
    "model.tau.rate",
    "model.tau.quadratic",
    "model.tau.value",
    "model.tau.values",
    "model.tau.scale",
    "heat.observation_time",
    "heat.target_time",
    "heat.grid",
    "run.command",
    "run.seed",
    "run.samples",
    "run.threads",
    "run.output_dir",
    "run.strict",
    "run.scale_index",
    "run.scale_max",
    "run.candidates",
    "run.alpha",
    "run.mc_sigma",
    "run.input",
    "run.input_format",
};

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string env_name(const std::string& key) {
  std::string out = "FHP_";
  for (char c : key) {
    out += (c == '.') ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return out;
}

class KeyMap {
 public:
  explicit KeyMap(std::map<std::string, std::string> raw) : raw_(std::move(raw)) {}

  bool has(const std::string& key) const { return raw_.count(key) != 0; }

  const std::string& raw(const std::string& key) const { return raw_.at(key); }

  std::string get_string(const std::string& key, const std::string& fallback) const {
    auto it = raw_.find(key);
    return it == raw_.end() ? fallback : it->second;
  }

  std::string require_string(const std::string& key) const {
    auto it = raw_.find(key);
    if (it == raw_.end()) throw ConfigError("missing required key '" + key + "'");
    return it->second;
  }

  double get_real(const std::string& key, double fallback) const {
    auto it = raw_.find(key);
    return it == raw_.end() ? fallback : parse_real(key, it->second);
  }

  double require_real(const std::string& key) const {
    return parse_real(key, require_string(key));
  }

  long long get_int(const std::string& key, long long fallback) const {
    auto it = raw_.find(key);
    return it == raw_.end() ? fallback : parse_int(key, it->second);
  }

  long long require_int(const std::string& key) const {
    return parse_int(key, require_string(key));
  }

  bool get_bool(const std::string& key, bool fallback) const {
    auto it = raw_.find(key);
    if (it == raw_.end()) return fallback;
    const std::string v = it->second;
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("'" + key + "' must be a boolean (got '" + v + "')");
  }

  std::vector<double> get_list(const std::string& key) const {
    std::vector<double> out;
    auto it = raw_.find(key);
    if (it == raw_.end()) return out;
    std::stringstream ss(it->second);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) throw ConfigError("'" + key + "' has an empty list entry");
      out.push_back(parse_real(key, item));
    }
    return out;
  }

 private:
  static double parse_real(const std::string& key, const std::string& v) {
    try {
      std::size_t pos = 0;
      double d = std::stod(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return d;
    } catch (const std::exception&) {
      throw ConfigError("'" + key + "' must be a real number (got '" + v + "')");
    }
  }

  static long long parse_int(const std::string& key, const std::string& v) {
    try {
      std::size_t pos = 0;
      long long i = std::stoll(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return i;
    } catch (const std::exception&) {
      throw ConfigError("'" + key + "' must be an integer (got '" + v + "')");
    }
  }

  std::map<std::string, std::string> raw_;
};

SequenceFamily parse_family(const KeyMap& keys, const std::string& prefix) {
  const std::string family = keys.require_string(prefix + ".family");
  const double scale = keys.get_real(prefix + ".scale", 1.0);
  if (family == "power") {
    const double exponent = keys.require_real(prefix + ".exponent");
    if (!(exponent > 0.0)) {
      throw ConfigError("'" + prefix + ".exponent' must be > 0 (got " +
                        std::to_string(exponent) + ")");
    }
    if (!(scale > 0.0)) throw ConfigError("'" + prefix + ".scale' must be > 0");
    return SequenceFamily::power_law(exponent, scale);
  }
  if (family == "exponential") {
    const double rate = keys.require_real(prefix + ".rate");
    if (!(rate > 0.0)) {
      throw ConfigError("'" + prefix + ".rate' must be > 0 (got " + std::to_string(rate) +
                        ")");
    }
    if (!(scale > 0.0)) throw ConfigError("'" + prefix + ".scale' must be > 0");
    return SequenceFamily::exponential(rate, keys.get_bool(prefix + ".quadratic", false),
                                       scale);
  }
  if (family == "constant") {
    const double value = keys.require_real(prefix + ".value");
    if (!(value > 0.0)) {
      throw ConfigError("'" + prefix + ".value' must be > 0 (got " + std::to_string(value) +
                        ")");
    }
    return SequenceFamily::constant(value);
  }
  if (family == "explicit") {
    std::vector<double> values = keys.get_list(prefix + ".values");
    if (values.empty()) throw ConfigError("missing required key '" + prefix + ".values'");
    try {
      return SequenceFamily::explicit_values(std::move(values));
    } catch (const std::invalid_argument& e) {
      throw ConfigError("'" + prefix + ".values': " + std::string(e.what()));
    }
  }
  throw ConfigError("'" + prefix +
                    ".family' must be one of power | exponential | constant | explicit "
                    "(got '" +
                    family + "')");
}

}  // namespace

std::string_view command_name(Command c) {
  switch (c) {
    case Command::Filter:
      return "filter";
    case Command::VerifyOptimality:
      return "verify-optimality";
    case Command::MonteCarlo:
      return "monte-carlo";
    case Command::Admissibility:
      return "admissibility";
    case Command::ScaleReport:
      return "scale-report";
    case Command::HeatDemo:
      return "heat-demo";
    case Command::ClassicalHp:
      return "classical-hp";
  }
  return "unknown";
}

Command parse_command(const std::string& name) {
  for (Command c :
       {Command::Filter, Command::VerifyOptimality, Command::MonteCarlo,
        Command::Admissibility, Command::ScaleReport, Command::HeatDemo,
        Command::ClassicalHp}) {
    if (name == command_name(c)) return c;
  }
  throw ConfigError("unknown command '" + name + "'");
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);

  std::map<std::string, std::string> raw;
  std::string line;
  std::string section;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError(path + ":" + std::to_string(lineno) + ": malformed section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) {
        throw ConfigError(path + ":" + std::to_string(lineno) + ": empty section name");
      }
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
    }
    if (!section.empty()) key = section + "." + key;
    if (kKnownKeys.count(key) == 0) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    raw[key] = value;
  }

  // Environment overrides for every schema key, applied before validation.
  for (const std::string& key : kKnownKeys) {
    if (const char* v = std::getenv(env_name(key).c_str())) raw[key] = v;
  }

  KeyMap keys(std::move(raw));
  RunConfig cfg;

  if (keys.has("run.command")) cfg.command = parse_command(keys.raw("run.command"));

  cfg.has_model = keys.has("model.lambda.family");
  cfg.has_heat = keys.has("heat.observation_time") || keys.has("heat.target_time");

  if (keys.has("model.truncation") || cfg.has_model || keys.has("model.mu.family")) {
    const long long n = keys.require_int("model.truncation");
    if (n < 1) {
      throw ConfigError("'model.truncation' must be >= 1 (got " + std::to_string(n) + ")");
    }
    cfg.truncation = static_cast<std::size_t>(n);
    const long long d0 = keys.get_int("model.kernel_dim", 0);
    if (d0 < 0) throw ConfigError("'model.kernel_dim' must be >= 0");
    cfg.kernel_dim = static_cast<std::size_t>(d0);

    cfg.mean_kernel = keys.get_list("model.y0_kernel");
    if (cfg.mean_kernel.empty()) cfg.mean_kernel.assign(cfg.kernel_dim, 0.0);
    if (cfg.mean_kernel.size() != cfg.kernel_dim) {
      throw ConfigError("'model.y0_kernel' must list exactly kernel_dim entries");
    }
    cfg.kernel_vars = keys.get_list("model.kernel_vars");
    if (cfg.kernel_vars.empty()) cfg.kernel_vars.assign(cfg.kernel_dim, 1.0);
    if (cfg.kernel_vars.size() != cfg.kernel_dim) {
      throw ConfigError("'model.kernel_vars' must list exactly kernel_dim entries");
    }
    for (double v : cfg.kernel_vars) {
      if (!(v > 0.0)) throw ConfigError("'model.kernel_vars' entries must be > 0");
    }

    if (cfg.has_model) cfg.singular_family = parse_family(keys, "model.lambda");
    cfg.obs_family = parse_family(keys, "model.mu");
    cfg.smooth_family = parse_family(keys, "model.tau");
  }

  if (cfg.has_heat) {
    cfg.observation_time = keys.require_real("heat.observation_time");
    cfg.target_time = keys.require_real("heat.target_time");
    if (!(cfg.observation_time > cfg.target_time)) {
      throw ConfigError("'heat.observation_time' must exceed 'heat.target_time'");
    }
    const long long grid = keys.get_int("heat.grid", 2048);
    if (grid < 2) throw ConfigError("'heat.grid' must be >= 2");
    cfg.grid_points = static_cast<std::size_t>(grid);
  }

  const long long seed = keys.get_int("run.seed", 0);
  if (seed < 0) throw ConfigError("'run.seed' must be >= 0");
  cfg.seed = static_cast<std::uint64_t>(seed);

  const long long samples = keys.get_int("run.samples", 10000);
  if (samples < 1) throw ConfigError("'run.samples' must be >= 1");
  cfg.samples = static_cast<std::size_t>(samples);

  const long long threads = keys.get_int("run.threads", 1);
  if (threads < 1) throw ConfigError("'run.threads' must be >= 1");
  cfg.threads = static_cast<std::size_t>(threads);

  cfg.output_dir = keys.get_string("run.output_dir", "out");
  cfg.strict = keys.get_bool("run.strict", false);

  const long long scale_index = keys.get_int("run.scale_index", 1);
  if (scale_index < 1) throw ConfigError("'run.scale_index' must be >= 1");
  cfg.scale_index = static_cast<int>(scale_index);

  const long long scale_max = keys.get_int("run.scale_max", 4);
  if (scale_max < 1) throw ConfigError("'run.scale_max' must be >= 1");
  cfg.scale_max = static_cast<int>(scale_max);

  const long long candidates = keys.get_int("run.candidates", 200);
  if (candidates < 1) throw ConfigError("'run.candidates' must be >= 1");
  cfg.candidates = static_cast<std::size_t>(candidates);

  if (keys.has("run.alpha")) {
    cfg.alpha = keys.require_real("run.alpha");
    if (!(cfg.alpha > 0.0)) throw ConfigError("'run.alpha' must be > 0");
    cfg.has_alpha = true;
  }

  cfg.mc_sigma = keys.get_real("run.mc_sigma", 3.0);
  if (!(cfg.mc_sigma > 0.0)) throw ConfigError("'run.mc_sigma' must be > 0");

  cfg.input_path = keys.get_string("run.input", "");
  const std::string fmt = keys.get_string("run.input_format", "coefficients");
  if (fmt == "coefficients") {
    cfg.input_format = DataFormat::Coefficients;
  } else if (fmt == "grid") {
    cfg.input_format = DataFormat::Grid;
  } else {
    throw ConfigError("'run.input_format' must be coefficients | grid (got '" + fmt + "')");
  }

  return cfg;
}

ModelSpec build_model(const RunConfig& cfg) {
  if (!cfg.has_model) {
    throw ConfigError("this command requires a [model] section with a lambda family");
  }
  SingularSystem sys =
      SingularSystem::from_family(cfg.singular_family, cfg.truncation, cfg.kernel_dim);
  DiagonalCovariance obs =
      DiagonalCovariance::domain_cov(cfg.obs_family, cfg.truncation, cfg.kernel_vars);
  DiagonalCovariance smooth = DiagonalCovariance::codomain_cov(cfg.smooth_family, cfg.truncation);
  return ModelSpec::make(std::move(sys), cfg.mean_kernel, std::move(obs), std::move(smooth));
}

namespace {

std::string family_string(const SequenceFamily& f) {
  switch (f.kind) {
    case SequenceFamily::Kind::PowerLaw:
      return "power exponent=" + format_g17(f.exponent) + " scale=" + format_g17(f.scale);
    case SequenceFamily::Kind::Exponential:
      return std::string("exponential rate=") + format_g17(f.rate) +
             (f.quadratic ? " quadratic" : "") + " scale=" + format_g17(f.scale);
    case SequenceFamily::Kind::Constant:
      return "constant value=" + format_g17(f.scale);
    case SequenceFamily::Kind::Explicit: {
      std::string s = "explicit";
      for (double v : f.explicit_terms) s += " " + format_g17(v);
      return s;
    }
  }
  return "unknown";
}

std::string list_string(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += format_g17(v[i]);
  }
  return s;
}

}  // namespace

std::map<std::string, std::string> effective_config(const RunConfig& cfg) {
  std::map<std::string, std::string> out;
  out["run.command"] = std::string(command_name(cfg.command));
  out["run.seed"] = std::to_string(cfg.seed);
  out["run.samples"] = std::to_string(cfg.samples);
  out["run.threads"] = std::to_string(cfg.threads);
  out["run.output_dir"] = cfg.output_dir;
  out["run.strict"] = cfg.strict ? "true" : "false";
  out["run.scale_index"] = std::to_string(cfg.scale_index);
  out["run.scale_max"] = std::to_string(cfg.scale_max);
  out["run.candidates"] = std::to_string(cfg.candidates);
  out["run.mc_sigma"] = format_g17(cfg.mc_sigma);
  if (cfg.has_alpha) out["run.alpha"] = format_g17(cfg.alpha);
  if (!cfg.input_path.empty()) {
    out["run.input"] = cfg.input_path;
    out["run.input_format"] =
        cfg.input_format == DataFormat::Grid ? "grid" : "coefficients";
  }
  if (cfg.truncation > 0) {
    out["model.truncation"] = std::to_string(cfg.truncation);
    out["model.kernel_dim"] = std::to_string(cfg.kernel_dim);
    if (!cfg.mean_kernel.empty()) out["model.y0_kernel"] = list_string(cfg.mean_kernel);
    if (!cfg.kernel_vars.empty()) out["model.kernel_vars"] = list_string(cfg.kernel_vars);
    if (cfg.has_model) out["model.lambda"] = family_string(cfg.singular_family);
    out["model.mu"] = family_string(cfg.obs_family);
    out["model.tau"] = family_string(cfg.smooth_family);
  }
  if (cfg.has_heat) {
    out["heat.observation_time"] = format_g17(cfg.observation_time);
    out["heat.target_time"] = format_g17(cfg.target_time);
    out["heat.grid"] = std::to_string(cfg.grid_points);
  }
  return out;
}

}  // namespace fhp::harness
