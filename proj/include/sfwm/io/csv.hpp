#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "sfwm/io/json_util.hpp"

namespace sfwm::io {

/// CSV text built in memory; floats carry 9 significant digits.
class CsvWriter {
 public:
  explicit CsvWriter(std::initializer_list<std::string> header) {
    bool first = true;
    for (const auto& h : header) {
      if (!first) text_ += ',';
      text_ += h;
      first = false;
    }
    text_ += '\n';
  }

  CsvWriter& row(std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
      if (!first) text_ += ',';
      text_ += format_number(v, 9);
      first = false;
    }
    text_ += '\n';
    return *this;
  }

  /// Mixed row: each cell already formatted.
  CsvWriter& raw(const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (k) text_ += ',';
      text_ += cells[k];
    }
    text_ += '\n';
    return *this;
  }

  static std::string cell(double v) { return format_number(v, 9); }

  const std::string& str() const { return text_; }

 private:
  std::string text_;
};

}  // namespace sfwm::io
