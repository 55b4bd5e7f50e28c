#pragma once

// Report emission: CSV or JSON tables plus JSON documents. Floats are always
// printed with "%.12e" and JSON numbers are the parsed back values of that
// text, so every JSON number matches its CSV cell.

#include <string>
#include <vector>

#include <json.hpp>

namespace ghlab {

inline constexpr const char* kReportSchema = "gh-lab-report/1";

std::string format_double(double x);
/// x rounded through format_double
double report_number(double x);

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row);
};

void write_table(const Table& t, const std::string& directory, const std::string& format);
void write_json(const nlohmann::ordered_json& doc, const std::string& directory, const std::string& name);

std::string to_csv(const Table& t);
nlohmann::ordered_json to_json(const Table& t);

}  // namespace ghlab
