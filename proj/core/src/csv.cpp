#include "relwig/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace relwig {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(std::ostream& os, const std::vector<std::string>& header) : os_(os), columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) os_ << (i ? "," : "") << header[i];
  os_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != columns_) throw std::invalid_argument("csv row has wrong number of columns");
  for (std::size_t i = 0; i < values.size(); ++i) os_ << (i ? "," : "") << format_double(values[i]);
  os_ << '\n';
}

void CsvWriter::row(const std::vector<std::string>& text, const std::vector<double>& values) {
  if (text.size() + values.size() != columns_) throw std::invalid_argument("csv row has wrong number of columns");
  std::size_t i = 0;
  for (const auto& t : text) os_ << (i++ ? "," : "") << t;
  for (double v : values) os_ << (i++ ? "," : "") << format_double(v);
  os_ << '\n';
}

}  // namespace relwig
