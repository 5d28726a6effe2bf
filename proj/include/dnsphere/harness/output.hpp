#pragma once

#include <string>
#include <variant>
#include <vector>

#include "dnsphere/harness/config.hpp"

namespace dnsphere {

using Cell = std::variant<long long, double, std::string>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

std::string format_cell(const Cell& c);

// CSV with a '#' header carrying the config hash and resolved config.
std::string to_csv(const Table& t, const RunConfig& cfg);
// {"config_hash", "config", "table", "columns", "rows"}.
std::string to_json_text(const Table& t, const RunConfig& cfg);

// Writes <dir>/<name>.csv and <dir>/<name>.json; returns the CSV paths.
std::vector<std::string> write_tables(const std::vector<Table>& tables, const RunConfig& cfg,
                                      const std::string& dir);

}  // namespace dnsphere
