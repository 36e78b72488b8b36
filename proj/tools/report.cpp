#include "report.hpp"

#include <stdexcept>

namespace multiquad::cli {

void Report::add_row(std::vector<std::string> row) {
  if (row.size() != columns.size()) throw std::logic_error("report row width mismatch for " + command);
  rows.push_back(std::move(row));
}

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_csv(const Report& report, std::ostream& out) {
  for (std::size_t i = 0; i < report.columns.size(); ++i) out << (i ? "," : "") << csv_escape(report.columns[i]);
  out << '\n';
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(row[i]);
    out << '\n';
  }
}

Json to_json(const Report& report) {
  Json j;
  j["command"] = report.command;
  j["parameters"] = report.parameters;
  j["columns"] = report.columns;
  Json rows = Json::array();
  for (const auto& row : report.rows) {
    Json r = Json::object();
    for (std::size_t i = 0; i < row.size(); ++i) r[report.columns[i]] = row[i];
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  for (const auto& [key, value] : report.extra.items()) j[key] = value;
  return j;
}

void write_report(const Report& report, Format format, std::ostream& out) {
  if (format == Format::csv) {
    write_csv(report, out);
  } else {
    out << to_json(report).dump(2) << '\n';
  }
}

}  // namespace multiquad::cli
