#pragma once

// Deterministic CSV emission. Doubles are rendered with std::to_chars
// (shortest round-trip), so a fixed seed yields a byte-identical file.
// The only nondeterministic line is an optional leading timestamp comment.

#include <charconv>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "crl/errors.hpp"

namespace crl {

inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

class CsvWriter {
 public:
  explicit CsvWriter(bool with_timestamp = false) {
    if (with_timestamp) {
      const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
      out_ << "# generated " << now << "\n";
    }
  }

  void comment(const std::string& text) { out_ << "# " << text << "\n"; }

  void header(const std::vector<std::string>& cols) { write_row(cols); }

  CsvWriter& cell(const std::string& v) {
    row_.push_back(v);
    return *this;
  }
  CsvWriter& cell(const char* v) {
    row_.emplace_back(v);
    return *this;
  }
  CsvWriter& cell(double v) {
    row_.push_back(format_double(v));
    return *this;
  }
  CsvWriter& cell(long long v) {
    row_.push_back(std::to_string(v));
    return *this;
  }
  CsvWriter& cell(int v) {
    row_.push_back(std::to_string(v));
    return *this;
  }
  CsvWriter& cell(std::uint64_t v) {
    row_.push_back(std::to_string(v));
    return *this;
  }
  CsvWriter& cell(bool v) {
    row_.emplace_back(v ? "1" : "0");
    return *this;
  }

  void end_row() {
    write_row(row_);
    row_.clear();
  }

  std::string str() const { return out_.str(); }

  void save(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << out_.str();
    if (!f) throw std::runtime_error("write failed: " + path);
  }

 private:
  void write_row(const std::vector<std::string>& cols) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i) out_ << ',';
      out_ << cols[i];
    }
    out_ << '\n';
  }

  std::ostringstream out_;
  std::vector<std::string> row_;
};

}  // namespace crl
