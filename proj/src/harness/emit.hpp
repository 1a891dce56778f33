#pragma once

// Internal emission helpers: reports are built as named in-memory files,
// written in one pass, and digested into the run manifest.

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "fhp/harness.hpp"

namespace fhp::harness {

struct OutputFile {
  std::string name;
  std::string content;
};

class Emitter {
 public:
  // Verifies the directory is creatable and writable before any computation.
  explicit Emitter(const RunConfig& cfg);

  void add(std::string name, std::string content);
  void add_json(std::string name, const nlohmann::ordered_json& j);

  void warn(std::string message);
  const std::vector<std::string>& warnings() const { return warnings_; }

  // Writes every collected file, then finalizes the manifest with digests.
  void finalize(const std::string& status);

 private:
  void write_manifest(const std::string& status, bool with_outputs);

  std::string dir_;
  RunConfig cfg_;
  std::string started_at_;
  std::vector<OutputFile> files_;
  std::vector<std::string> warnings_;
};

// CSV assembly: rows of preformatted cells.
std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows);

std::string iso8601_now();

}  // namespace fhp::harness
