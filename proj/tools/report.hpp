#pragma once

// Tabular report shared by every subcommand: a fixed column list, string
// cells, and CSV or JSON rendering.

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace multiquad::cli {

using Json = nlohmann::ordered_json;

struct Report {
  std::string command;
  Json parameters = Json::object();  // values are strings
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  Json extra = Json::object();  // command-specific structured fields

  void add_row(std::vector<std::string> row);
};

enum class Format { csv, json };

std::string csv_escape(const std::string& cell);
void write_csv(const Report& report, std::ostream& out);
Json to_json(const Report& report);
void write_report(const Report& report, Format format, std::ostream& out);

}  // namespace multiquad::cli
