#include "edgestat/harness/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "edgestat/errors.hpp"
#include "json.hpp"

namespace edgestat {

void Table::add(std::vector<Cell> row) {
  if (row.size() != header.size()) throw ValidationError("Table " + name + ": row width differs from header");
  rows.push_back(std::move(row));
}

const Table* ExperimentReport::find(const std::string& name) const {
  for (const Table& t : tables) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

std::string format_cell(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) {
    if (std::isnan(*d)) return "nan";
    if (std::isinf(*d)) return *d > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", *d);
    return buf;
  }
  if (const std::int64_t* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_cell(row[i]);
    out << '\n';
  }
}

void write_report(const ExperimentReport& report, const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (const Table& t : report.tables) {
    std::ofstream out(std::filesystem::path(dir) / (t.name + ".csv"));
    if (!out) throw ValidationError("cannot write " + t.name + ".csv in " + dir);
    write_csv(t, out);
  }
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [key, value] : report.meta) {
    if (const double* d = std::get_if<double>(&value)) {
      meta[key] = std::isfinite(*d) ? nlohmann::ordered_json(*d) : nlohmann::ordered_json(format_cell(value));
    } else if (const std::int64_t* i = std::get_if<std::int64_t>(&value)) {
      meta[key] = *i;
    } else {
      meta[key] = std::get<std::string>(value);
    }
  }
  if (!report.config_json.empty()) meta["config"] = nlohmann::ordered_json::parse(report.config_json);
  meta["warnings"] = report.warnings;
  nlohmann::ordered_json tables = nlohmann::ordered_json::array();
  for (const Table& t : report.tables) tables.push_back(t.name + ".csv");
  meta["tables"] = tables;
  std::ofstream out(std::filesystem::path(dir) / "meta.json");
  if (!out) throw ValidationError("cannot write meta.json in " + dir);
  out << meta.dump(2) << '\n';
}

}  // namespace edgestat
