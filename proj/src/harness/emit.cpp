#include "emit.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>

#include "fhp/version.hpp"

namespace fhp::harness {

double pairwise_sum(const double* a, std::size_t n) {
  if (n <= 8) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i];
    return acc;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(a, half) + pairwise_sum(a + half, n - half);
}

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string iso8601_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ",";
    out += header[i];
  }
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += row[i];
    }
    out += "\n";
  }
  return out;
}

Emitter::Emitter(const RunConfig& cfg) : dir_(cfg.output_dir), cfg_(cfg) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec || !fs::is_directory(dir_)) {
    throw IoError("cannot create output directory: " + dir_);
  }
  const fs::path probe = fs::path(dir_) / ".write_probe";
  {
    std::ofstream out(probe);
    if (!out || !(out << "probe")) {
      throw IoError("output directory is not writable: " + dir_);
    }
  }
  fs::remove(probe, ec);

  started_at_ = iso8601_now();
  write_manifest("running", /*with_outputs=*/false);
}

void Emitter::add(std::string name, std::string content) {
  files_.push_back({std::move(name), std::move(content)});
}

void Emitter::add_json(std::string name, const nlohmann::ordered_json& j) {
  add(std::move(name), j.dump(2) + "\n");
}

void Emitter::warn(std::string message) { warnings_.push_back(std::move(message)); }

void Emitter::write_manifest(const std::string& status, bool with_outputs) {
  nlohmann::ordered_json m;
  m["artifact_version"] = kVersion;
  m["command"] = std::string(command_name(cfg_.command));
  m["status"] = status;
  m["started_at"] = started_at_;
  if (with_outputs) {
    m["finished_at"] = iso8601_now();
  } else {
    m["finished_at"] = nullptr;
  }
  m["strict"] = cfg_.strict;
  nlohmann::ordered_json cfg_echo;
  for (const auto& [k, v] : effective_config(cfg_)) cfg_echo[k] = v;
  m["config"] = cfg_echo;
  m["warnings"] = warnings_;
  nlohmann::ordered_json outputs = nlohmann::ordered_json::array();
  if (with_outputs) {
    for (const OutputFile& f : files_) {
      outputs.push_back({{"path", f.name},
                         {"bytes", f.content.size()},
                         {"fnv1a64", fnv1a64_hex(f.content)}});
    }
  }
  m["outputs"] = outputs;

  const std::filesystem::path p = std::filesystem::path(dir_) / "run_manifest.json";
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out || !(out << m.dump(2) << "\n")) {
    throw IoError("cannot write manifest: " + p.string());
  }
}

void Emitter::finalize(const std::string& status) {
  namespace fs = std::filesystem;
  for (const OutputFile& f : files_) {
    const fs::path p = fs::path(dir_) / f.name;
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out || !out.write(f.content.data(),
                           static_cast<std::streamsize>(f.content.size()))) {
      throw IoError("cannot write output file: " + p.string());
    }
  }
  write_manifest(status, /*with_outputs=*/true);
}

}  // namespace fhp::harness
