#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "nhl/types.hpp"

namespace nhl {

// Minimal deterministic CSV writer: fixed 17-significant-digit formatting so
// identical inputs produce byte-identical files.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> columns);
  void add_row(const std::vector<double>& values);
  const std::vector<std::string>& columns() const { return columns_; }
  void write(const std::filesystem::path& file) const;
  std::string to_string() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
};

std::string format_double(double v);

// FNV-1a hash of a canonical string, as 16 hex digits; used to name output
// artifacts after their resolved configuration.
std::string fnv1a_hex(const std::string& text);

}  // namespace nhl
