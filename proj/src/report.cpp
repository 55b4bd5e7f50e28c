#include "ghlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "ghlab/errors.hpp"

namespace ghlab {

namespace {

void write_file(const std::string& directory, const std::string& name, const std::string& body) {
  std::filesystem::create_directories(directory);
  const std::filesystem::path p = std::filesystem::path(directory) / name;
  std::ofstream out(p, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + p.string());
  out << body;
  if (!out) throw InvalidArgument("write failed for " + p.string());
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12e", x);
  return buf;
}

double report_number(double x) {
  if (!std::isfinite(x)) return x;
  return std::stod(format_double(x));
}

void Table::add(std::vector<std::string> row) {
  if (row.size() != columns.size()) throw InvalidArgument("table " + name + ": row width differs from the header");
  rows.push_back(std::move(row));
}

std::string to_csv(const Table& t) {
  std::string s;
  for (std::size_t i = 0; i < t.columns.size(); ++i) s += (i ? "," : "") + csv_cell(t.columns[i]);
  s += '\n';
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + csv_cell(r[i]);
    s += '\n';
  }
  return s;
}

nlohmann::ordered_json to_json(const Table& t) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : t.rows) {
    nlohmann::ordered_json o;
    for (std::size_t i = 0; i < r.size(); ++i) o[t.columns[i]] = r[i];
    rows.push_back(std::move(o));
  }
  return {{"schema", kReportSchema}, {"table", t.name}, {"columns", t.columns}, {"rows", rows}};
}

void write_table(const Table& t, const std::string& directory, const std::string& format) {
  if (format == "csv") {
    write_file(directory, t.name + ".csv", to_csv(t));
  } else if (format == "json") {
    write_file(directory, t.name + ".json", to_json(t).dump(2) + "\n");
  } else {
    throw InvalidArgument("unknown table format '" + format + "'");
  }
}

void write_json(const nlohmann::ordered_json& doc, const std::string& directory, const std::string& name) {
  write_file(directory, name + ".json", doc.dump(2) + "\n");
}

}  // namespace ghlab
