#pragma once

// Locale-independent formatting helpers for CSV and aligned-text output.

#include "exact_math.hpp"

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace rn {

inline std::string fmt_g(double v, int sig = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", sig, v);
  return buf;
}

inline std::string join_csv(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += fields[i];
  }
  out += '\n';
  return out;
}

// big integer as d.ddde+k when it would be longer than ~12 digits
inline std::string fmt_big(const big_int& v, int sig = 4) {
  std::string digits = v.str();
  const bool neg = !digits.empty() && digits[0] == '-';
  const std::string mag = neg ? digits.substr(1) : digits;
  if (mag.size() <= 12) return digits;
  std::string mant = mag.substr(0, static_cast<std::size_t>(sig));
  mant.insert(1, ".");
  return (neg ? "-" : "") + mant + "e+" + std::to_string(mag.size() - 1);
}

inline void write_aligned(std::ostream& os, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (width.size() <= i) width.resize(i + 1, 0);
      width[i] = std::max(width[i], row[i].size());
    }
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << "  ";
      os << row[i];
      if (i + 1 < row.size())
        os << std::string(width[i] - row[i].size(), ' ');
    }
    os << '\n';
  }
}

}  // namespace rn
