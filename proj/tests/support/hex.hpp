// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "core/bytes.hpp"

namespace gp::testing {

/// Hex text, 32 bytes per line.
inline std::string to_hex(ByteView data) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  for (size_t i = 0; i < data.size(); ++i) {
    out += digits[data[i] >> 4];
    out += digits[data[i] & 15];
    if (i % 32 == 31 || i + 1 == data.size()) out += '\n';
  }
  return out;
}

/// Parses hex digits, ignoring whitespace and '#' comment lines.
inline Bytes from_hex(const std::string& text) {
  Bytes out;
  std::istringstream in(text);
  std::string line;
  int nibble = -1;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') continue;
    for (char c : line) {
      int v = c >= '0' && c <= '9' ? c - '0' : c >= 'a' && c <= 'f' ? c - 'a' + 10 : -1;
      if (v < 0) continue;
      if (nibble < 0) {
        nibble = v;
      } else {
        out.push_back(static_cast<uint8_t>(nibble << 4 | v));
        nibble = -1;
      }
    }
  }
  return out;
}

inline Bytes read_hex_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_hex(ss.str());
}

}  // namespace gp::testing
