#include "hardylab/csv.hpp"

#include <charconv>
#include <cmath>

namespace hardylab {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

CsvWriter::CsvWriter(const std::vector<std::string>& header) {
  for (const auto& h : header) cell(std::string_view(h));
  end_row();
}

void CsvWriter::separator() {
  if (row_open_) out_ += ',';
  row_open_ = true;
}

CsvWriter& CsvWriter::cell(double value) {
  separator();
  out_ += format_number(value);
  return *this;
}

CsvWriter& CsvWriter::cell(std::string_view text) {
  separator();
  out_ += text;
  return *this;
}

CsvWriter& CsvWriter::cell(bool flag) {
  separator();
  out_ += flag ? "true" : "false";
  return *this;
}

void CsvWriter::end_row() {
  out_ += '\n';
  row_open_ = false;
}

}  // namespace hardylab
