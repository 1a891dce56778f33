#include <cctype>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "fhp/harness.hpp"
#include "fhp/heat.hpp"

namespace fhp::harness {

namespace {

struct Row {
  std::size_t lineno;
  double first;
  double second;
};

// Parses "a,b" rows, skipping blank lines, '#' comments, and one optional
// non-numeric header row.
std::vector<Row> read_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open input file: " + path);

  std::vector<Row> rows;
  std::string line;
  std::size_t lineno = 0;
  bool header_allowed = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    bool blank = true;
    for (char c : line) {
      if (!std::isspace(static_cast<unsigned char>(c))) {
        blank = false;
        break;
      }
    }
    if (blank) continue;

    std::stringstream ss(line);
    std::string a, b, extra;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',')) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected two columns");
    }
    if (std::getline(ss, extra, ',')) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected two columns");
    }
    Row row{lineno, 0.0, 0.0};
    try {
      std::size_t pos = 0;
      row.first = std::stod(a, &pos);
      while (pos < a.size() && std::isspace(static_cast<unsigned char>(a[pos]))) ++pos;
      if (pos != a.size()) throw std::invalid_argument(a);
      pos = 0;
      row.second = std::stod(b, &pos);
      while (pos < b.size() && std::isspace(static_cast<unsigned char>(b[pos]))) ++pos;
      if (pos != b.size()) throw std::invalid_argument(b);
    } catch (const std::exception&) {
      if (header_allowed) {
        header_allowed = false;
        continue;
      }
      throw ConfigError(path + ":" + std::to_string(lineno) + ": malformed numeric row");
    }
    header_allowed = false;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

HilbertElement ingest_coefficients(const std::string& path, std::size_t truncation,
                                   std::size_t kernel_dim) {
  const std::vector<Row> rows = read_rows(path);
  HilbertElement x = HilbertElement::zero(Space::Domain, kernel_dim, truncation);

  std::optional<long long> last_index;
  for (const Row& row : rows) {
    const double idx_real = row.first;
    const long long idx = static_cast<long long>(idx_real);
    if (static_cast<double>(idx) != idx_real) {
      throw ConfigError(path + ":" + std::to_string(row.lineno) +
                        ": index must be an integer");
    }
    if (last_index && idx <= *last_index) {
      throw ConfigError(path + ":" + std::to_string(row.lineno) +
                        ": indices must be strictly increasing");
    }
    last_index = idx;
    if (!std::isfinite(row.second)) {
      throw ConfigError(path + ":" + std::to_string(row.lineno) + ": non-finite value");
    }
    if (idx >= 1) {
      if (static_cast<std::size_t>(idx) > truncation) {
        throw ConfigError(path + ":" + std::to_string(row.lineno) +
                          ": span index exceeds truncation " + std::to_string(truncation));
      }
      x.span[static_cast<std::size_t>(idx) - 1] = row.second;
    } else {
      const std::size_t slot = static_cast<std::size_t>(-idx);
      if (slot >= kernel_dim) {
        throw ConfigError(path + ":" + std::to_string(row.lineno) +
                          ": kernel index out of range for kernel_dim " +
                          std::to_string(kernel_dim));
      }
      x.kernel[slot] = row.second;
    }
  }
  return x;
}

HilbertElement ingest_grid(const std::string& path, std::size_t modes) {
  const std::vector<Row> rows = read_rows(path);
  if (rows.size() < 2) throw ConfigError(path + ": grid input needs at least 2 rows");
  std::vector<double> s(rows.size()), f(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    s[i] = rows[i].first;
    f[i] = rows[i].second;
  }
  try {
    return analyze_grid(s, f, modes);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path + ": " + std::string(e.what()));
  }
}

std::vector<double> ingest_series(const std::string& path) {
  const std::vector<Row> rows = read_rows(path);
  std::vector<double> out;
  out.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& row = rows[i];
    if (row.first != static_cast<double>(i + 1)) {
      throw ConfigError(path + ":" + std::to_string(row.lineno) +
                        ": series indices must run 1..T in order");
    }
    if (!std::isfinite(row.second)) {
      throw ConfigError(path + ":" + std::to_string(row.lineno) + ": non-finite value");
    }
    out.push_back(row.second);
  }
  return out;
}

}  // namespace fhp::harness
