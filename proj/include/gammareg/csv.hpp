#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gammareg/errors.hpp"
#include "gammareg/ext_real.hpp"

namespace gammareg {

/// Shortest round-trip decimal representation; +inf serializes as "inf".
inline std::string format_value(double v) {
  if (v == std::numeric_limits<double>::infinity()) return "inf";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v == 0.0 ? 0.0 : v);
  return std::string(buf, res.ptr);
}

inline std::string format_value(ExtReal v) {
  return v.finite() ? format_value(v.value()) : "inf";
}

inline double parse_value(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s == "inf") return std::numeric_limits<double>::infinity();
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw SpecError("malformed numeric value '" + std::string(s) + "'");
  return v;
}

/// Minimal CSV table with mandatory header, UTF-8, LF line endings.
class CsvWriter {
public:
  explicit CsvWriter(std::vector<std::string> header) : cols_(header.size()) {
    append_row(header);
  }

  void row(const std::vector<std::string>& cells) {
    if (cells.size() != cols_) throw Error("csv row width mismatch");
    append_row(cells);
  }

  const std::string& str() const { return out_; }

  void write(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write " + path);
    f << out_;
  }

private:
  void append_row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ += ',';
      out_ += cells[i];
    }
    out_ += '\n';
  }
  std::size_t cols_;
  std::string out_;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;  // numeric cells; "inf" becomes +inf
};

inline CsvTable read_csv(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw SpecError("cannot open CSV file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  std::string content = ss.str();

  CsvTable table;
  std::size_t pos = 0;
  bool first = true;
  while (pos < content.size()) {
    std::size_t eol = content.find('\n', pos);
    if (eol == std::string::npos) eol = content.size();
    std::string_view line(content.data() + pos, eol - pos);
    pos = eol + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    std::vector<std::string_view> cells;
    std::size_t c = 0;
    while (true) {
      std::size_t comma = line.find(',', c);
      if (comma == std::string_view::npos) {
        cells.push_back(line.substr(c));
        break;
      }
      cells.push_back(line.substr(c, comma - c));
      c = comma + 1;
    }
    if (first) {
      for (auto sv : cells) {
        std::string h(sv);
        while (!h.empty() && (h.back() == ' ' || h.back() == '\r')) h.pop_back();
        while (!h.empty() && h.front() == ' ') h.erase(h.begin());
        table.header.push_back(h);
      }
      first = false;
      continue;
    }
    std::vector<double> row;
    for (auto sv : cells) row.push_back(parse_value(sv));
    if (row.size() != table.header.size())
      throw SpecError("CSV row width mismatch in " + path);
    table.rows.push_back(std::move(row));
  }
  if (table.header.empty()) throw SpecError("CSV file has no header: " + path);
  return table;
}

/// FNV-1a 64-bit content hash, hex-encoded; embedded in reports.
inline std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  char buf[17];
  static const char* digits = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = digits[h & 0xF];
    h >>= 4;
  }
  buf[16] = '\0';
  return std::string(buf);
}

}  // namespace gammareg
