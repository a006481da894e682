#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace sco {

// Tabular experiment result with a deterministic column order. Rows carry
// preformatted cells; reruns with identical config are byte-identical.
struct ExperimentReport {
  std::string experiment;
  std::vector<std::pair<std::string, std::string>> config;  // echo
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  double wall_clock_seconds = 0.0;

  void add_row(std::vector<std::string> cells);
  // Rows sorted lexicographically by cell so parallel assembly stays
  // deterministic.
  void sort_rows();
};

enum class ReportFormat { kCsv, kJson };

std::string format_report(const ExperimentReport& report,
                          ReportFormat format);
void emit_report(const ExperimentReport& report, ReportFormat format,
                 const std::string& path);

// Fixed-format numeric cell helpers (shortest round-trip for doubles).
std::string to_cell(double value);
std::string to_cell(std::int64_t value);

// 95% normal-approximation confidence half-width: 1.96 * stddev/sqrt(n).
double confidence_halfwidth(const std::vector<double>& values);
double mean_of(const std::vector<double>& values);

}  // namespace sco
