#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace chemolab::harness {

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

/// Comma-separated table with a header row. Numbers are written with
/// format_double so reruns produce byte-identical files.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  CsvTable& row(const std::vector<double>& values);
  CsvTable& row(const std::vector<std::string>& cells);

  std::string str() const;
  void write(const std::filesystem::path& path) const;

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Parses a file written by CsvTable (no quoting).
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace chemolab::harness
