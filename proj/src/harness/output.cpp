#include "dnsphere/harness/output.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "dnsphere/error.hpp"

namespace dnsphere {

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw InputError("table " + name + ": row width " + std::to_string(row.size()) +
                     " != " + std::to_string(columns.size()));
  rows.push_back(std::move(row));
}

std::string format_cell(const Cell& c) {
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  const double v = std::get<double>(c);
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string to_csv(const Table& t, const RunConfig& cfg) {
  std::string out = "# dnsphere " + cfg.command + " " + t.name + "\n";
  out += "# config_hash=" + cfg.hash_hex() + "\n";
  for (const auto& [k, v] : cfg.resolved()) out += "# " + k + "=" + v + "\n";
  for (size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
  out += "\n";
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_escape(format_cell(row[i]));
    out += "\n";
  }
  return out;
}

std::string to_json_text(const Table& t, const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["config_hash"] = cfg.hash_hex();
  nlohmann::ordered_json c = nlohmann::ordered_json::object();
  for (const auto& [k, v] : cfg.resolved()) c[k] = v;
  j["config"] = c;
  j["table"] = t.name;
  j["columns"] = t.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (const auto& cell : row) {
      if (const auto* i = std::get_if<long long>(&cell))
        r.push_back(*i);
      else if (const auto* s = std::get_if<std::string>(&cell))
        r.push_back(*s);
      else if (std::isfinite(std::get<double>(cell)))
        r.push_back(std::get<double>(cell));
      else
        r.push_back(format_cell(cell));  // JSON has no nan/inf
    }
    rows.push_back(r);
  }
  j["rows"] = rows;
  return j.dump(1) + "\n";
}

std::vector<std::string> write_tables(const std::vector<Table>& tables, const RunConfig& cfg,
                                      const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir + "': " + ec.message());
  std::vector<std::string> paths;
  for (const auto& t : tables) {
    const fs::path csv = fs::path(dir) / (t.name + ".csv");
    const fs::path js = fs::path(dir) / (t.name + ".json");
    std::ofstream(csv, std::ios::binary) << to_csv(t, cfg);
    std::ofstream(js, std::ios::binary) << to_json_text(t, cfg);
    if (!fs::exists(csv) || !fs::exists(js))
      throw ConfigError("cannot write to output directory '" + dir + "'");
    paths.push_back(csv.string());
  }
  return paths;
}

}  // namespace dnsphere
