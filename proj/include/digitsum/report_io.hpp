#pragma once

#include "digitsum/report.hpp"
#include "digitsum/types.hpp"

#include <json.hpp>

#include <cstdio>
#include <ostream>
#include <string>

namespace digitsum {

using json = nlohmann::ordered_json;

/// Reals render with 12 significant digits.
inline std::string format_real(double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.12g", x);
  return buffer;
}

/// Exact integers become decimal strings (no precision loss downstream);
/// reals become JSON numbers rounded to 12 significant digits.
inline json to_json(const Value& value) {
  if (value.is_exact()) return value.exact().str();
  return json::parse(format_real(value.real()));
}

inline std::string to_plain(const Value& value) {
  return value.is_exact() ? value.exact().str() : format_real(value.real());
}

inline json to_json(const DefectReport& report) {
  json inputs = json::object();
  for (const auto& [name, value] : report.inputs) inputs[name] = to_json(value);
  json doc{{"inequality_id", report.inequality_id},
           {"inputs", std::move(inputs)},
           {"lhs", to_json(report.lhs)},
           {"rhs", to_json(report.rhs)},
           {"defect", to_json(report.defect)},
           {"holds", report.holds}};
  if (!report.note.empty()) doc["note"] = report.note;
  if (!report.extras.empty()) {
    json extras = json::object();
    for (const auto& [name, value] : report.extras) extras[name] = to_json(value);
    doc["extras"] = std::move(extras);
  }
  return doc;
}

inline json to_json(const ScanReport& report) {
  json grid = json::object();
  for (const auto& [name, value] : report.grid) grid[name] = value;
  json violations = json::array();
  for (const auto& witness : report.violations) {
    json entry = json::array();
    for (const auto& coordinate : witness) entry.push_back(coordinate.str());
    violations.push_back(std::move(entry));
  }
  json argmin = json::array();
  for (const auto& coordinate : report.argmin_witness) argmin.push_back(coordinate.str());
  return json{{"inequality_id", report.inequality_id},
              {"grid", std::move(grid)},
              {"instances_checked", report.instances_checked},
              {"min_defect", to_json(report.min_defect)},
              {"argmin_witness", std::move(argmin)},
              {"equality_count", report.equality_count},
              {"violations", std::move(violations)}};
}

inline json to_json(const CounterexampleWitness& witness) {
  json ns = json::array();
  for (const auto& n : witness.ns) ns.push_back(n.str());
  return json{{"b", witness.b.value()},
              {"r", witness.r},
              {"x", witness.x},
              {"ns", std::move(ns)},
              {"lhs", witness.lhs.str()},
              {"rhs", witness.rhs.str()},
              {"margin", witness.margin.str()},
              {"violation_found", witness.margin > 0}};
}

inline std::string plain_line(const ScanReport& report) {
  std::string line = report.inequality_id;
  for (const auto& [name, value] : report.grid) line += " " + name + "=" + value;
  line += " instances=" + std::to_string(report.instances_checked);
  line += " min_defect=" + to_plain(report.min_defect);
  if (!report.argmin_witness.empty()) {
    line += " argmin=(";
    for (std::size_t i = 0; i < report.argmin_witness.size(); ++i) {
      if (i) line += ",";
      line += report.argmin_witness[i].str();
    }
    line += ")";
  }
  line += " equalities=" + std::to_string(report.equality_count);
  line += " violations=" + std::to_string(report.violations.size());
  line += report.holds() ? " OK" : " VIOLATION";
  return line;
}

/// Aggregate CSV: one row per report.
inline void write_scan_csv_header(std::ostream& out) {
  out << "inequality_id,grid,instances_checked,min_defect,argmin_witness,equality_count,"
         "violations\n";
}

inline void write_scan_csv_row(std::ostream& out, const ScanReport& report) {
  std::string grid;
  for (const auto& [name, value] : report.grid) {
    if (!grid.empty()) grid += ";";
    grid += name + "=" + value;
  }
  std::string argmin;
  for (std::size_t i = 0; i < report.argmin_witness.size(); ++i) {
    if (i) argmin += ";";
    argmin += report.argmin_witness[i].str();
  }
  out << report.inequality_id << ',' << grid << ',' << report.instances_checked << ','
      << to_plain(report.min_defect) << ',' << argmin << ',' << report.equality_count << ','
      << report.violations.size() << '\n';
}

}  // namespace digitsum
