#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

namespace relwig {

/// Minimal CSV emitter. Numbers are written with 17 significant digits so
/// output is round-trippable and byte-stable across runs.
class CsvWriter {
 public:
  CsvWriter(std::ostream& os, const std::vector<std::string>& header);

  void row(const std::vector<double>& values);
  void row(std::initializer_list<double> values) { row(std::vector<double>(values)); }
  /// Mixed row: leading text cells followed by numbers.
  void row(const std::vector<std::string>& text, const std::vector<double>& values);

  std::size_t columns() const { return columns_; }

 private:
  std::ostream& os_;
  std::size_t columns_;
};

std::string format_double(double v);

}  // namespace relwig
