#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace orlat {

inline constexpr const char* kArtifactVersion = "orlat 0.1.0";

// Resolved run parameters, echoed verbatim into every output header so a
// result file is reproducible from its own first lines.
struct RunConfig {
  std::string command;
  std::uint64_t seed = 1;
  std::int64_t horizon = 16384;
  std::int64_t n_paths = 100000;
  double abs_tol = 1e-9;
  std::string variant = "auto";
  std::string output_path;  // empty = stdout
  std::string format = "csv";
  int threads = 0;

  std::vector<std::pair<std::string, std::string>> echo() const;
};

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> cells);
};

std::string format_cell(const Cell& c);

// CSV with '#'-prefixed header comments carrying the artifact version and
// the resolved config; loaders skip comment lines.
void write_csv(std::ostream& os, const Table& t, const RunConfig& cfg);

// JSON mirror of the same table.
void write_json(std::ostream& os, const Table& t, const RunConfig& cfg);

// Dispatches on cfg.format and cfg.output_path (stdout when empty).
void write_table(const Table& t, const RunConfig& cfg);

}  // namespace orlat
