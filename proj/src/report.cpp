#include "sco/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace sco {

void ExperimentReport::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns.size()) {
    throw std::invalid_argument("report row width mismatch");
  }
  rows.push_back(std::move(cells));
}

void ExperimentReport::sort_rows() { std::sort(rows.begin(), rows.end()); }

std::string to_cell(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string to_cell(std::int64_t value) { return std::to_string(value); }

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

}  // namespace

std::string format_report(const ExperimentReport& report,
                          ReportFormat format) {
  if (format == ReportFormat::kCsv) {
    std::string out;
    out += "# experiment: " + report.experiment + "\n";
    for (const auto& [k, v] : report.config) {
      out += "# " + k + ": " + v + "\n";
    }
    for (std::size_t i = 0; i < report.columns.size(); ++i) {
      if (i > 0) out += ",";
      out += csv_escape(report.columns[i]);
    }
    out += "\n";
    for (const auto& row : report.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i > 0) out += ",";
        out += csv_escape(row[i]);
      }
      out += "\n";
    }
    return out;
  }
  nlohmann::ordered_json j;
  j["experiment"] = report.experiment;
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.config) cfg[k] = v;
  j["config"] = std::move(cfg);
  j["seeds"] = report.seeds;
  j["columns"] = report.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      obj[report.columns[i]] = row[i];
    }
    rows.push_back(std::move(obj));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

void emit_report(const ExperimentReport& report, ReportFormat format,
                 const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open report path: " + path);
  }
  out << format_report(report, format);
  if (!out) {
    throw std::runtime_error("failed writing report: " + path);
  }
}

double mean_of(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

double confidence_halfwidth(const std::vector<double>& values) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  const double m = mean_of(values);
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  const double stddev = std::sqrt(ss / static_cast<double>(n - 1));
  return 1.96 * stddev / std::sqrt(static_cast<double>(n));
}

}  // namespace sco
