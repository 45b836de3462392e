// csv.hpp - minimal CSV row builder ('.' decimal point, '\n' line ends).
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace hardylab {

// Shortest round-trip representation; NaN and infinities spelled out.
std::string format_number(double value);

class CsvWriter {
 public:
  explicit CsvWriter(const std::vector<std::string>& header);

  CsvWriter& cell(double value);
  CsvWriter& cell(std::string_view text);
  CsvWriter& cell(bool flag);
  void end_row();

  const std::string& str() const noexcept { return out_; }

 private:
  void separator();

  std::string out_;
  bool row_open_ = false;
};

}  // namespace hardylab
