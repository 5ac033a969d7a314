#include "orlat/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include <json.hpp>

#include "orlat/threads.hpp"

namespace orlat {

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", abs_tol);
  return {
      {"command", command},
      {"seed", std::to_string(seed)},
      {"horizon", std::to_string(horizon)},
      {"paths", std::to_string(n_paths)},
      {"tol", buf},
      {"variant", variant},
      {"format", format},
      {"threads", std::to_string(threads > 0 ? threads : max_threads())},
  };
}

void Table::add_row(std::vector<Cell> cells) {
  if (cells.size() != columns.size())
    throw std::invalid_argument("Table: row width does not match columns");
  rows.push_back(std::move(cells));
}

std::string format_cell(const Cell& c) {
  if (std::holds_alternative<std::int64_t>(c)) return std::to_string(std::get<std::int64_t>(c));
  if (std::holds_alternative<double>(c)) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", std::get<double>(c));
    return buf;
  }
  return std::get<std::string>(c);
}

void write_csv(std::ostream& os, const Table& t, const RunConfig& cfg) {
  os << "# " << kArtifactVersion << "\n";
  for (const auto& [k, v] : cfg.echo()) os << "# " << k << " = " << v << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    os << t.columns[i] << (i + 1 < t.columns.size() ? "," : "\n");
  for (const auto& row : t.rows)
    for (std::size_t i = 0; i < row.size(); ++i)
      os << format_cell(row[i]) << (i + 1 < row.size() ? "," : "\n");
}

void write_json(std::ostream& os, const Table& t, const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["artifact"] = kArtifactVersion;
  auto& c = j["config"];
  for (const auto& [k, v] : cfg.echo()) c[k] = v;
  j["columns"] = t.columns;
  auto& rows = j["rows"];
  rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json jr = nlohmann::ordered_json::array();
    for (const auto& cell : row) {
      if (std::holds_alternative<std::int64_t>(cell))
        jr.push_back(std::get<std::int64_t>(cell));
      else if (std::holds_alternative<double>(cell))
        jr.push_back(std::get<double>(cell));
      else
        jr.push_back(std::get<std::string>(cell));
    }
    rows.push_back(std::move(jr));
  }
  os << j.dump(2) << "\n";
}

void write_table(const Table& t, const RunConfig& cfg) {
  const auto emit = [&](std::ostream& os) {
    if (cfg.format == "json")
      write_json(os, t, cfg);
    else
      write_csv(os, t, cfg);
  };
  if (cfg.output_path.empty()) {
    emit(std::cout);
    return;
  }
  std::ofstream f(cfg.output_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + cfg.output_path);
  emit(f);
}

}  // namespace orlat
