#ifndef EDGESTAT_HARNESS_REPORT_HPP
#define EDGESTAT_HARNESS_REPORT_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace edgestat {

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
  std::string name;  // file stem
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

struct ExperimentReport {
  std::vector<Table> tables;
  std::vector<std::pair<std::string, Cell>> meta;
  std::string config_json;  // echoed into meta.json when not empty
  std::vector<std::string> warnings;

  [[nodiscard]] const Table* find(const std::string& name) const;
};

/// Doubles as %.17g, integers verbatim, strings verbatim.
std::string format_cell(const Cell& c);
void write_csv(const Table& table, std::ostream& out);

/// Writes every table as <dir>/<name>.csv and <dir>/meta.json. Creates dir.
void write_report(const ExperimentReport& report, const std::string& dir);

}  // namespace edgestat

#endif  // EDGESTAT_HARNESS_REPORT_HPP
