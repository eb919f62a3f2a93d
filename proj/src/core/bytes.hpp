// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <bit>
#include <cstring>
#include <span>
#include <string>
#include <vector>

#include "core/error.hpp"

namespace gp {

using Bytes = std::vector<uint8_t>;
using ByteView = std::span<const uint8_t>;

inline ByteView as_view(const std::string& s) {
  return {reinterpret_cast<const uint8_t*>(s.data()), s.size()};
}

// Little-endian loads and stores of 1/2/4/8-byte unsigned values.
inline uint64_t load_le(const uint8_t* p, unsigned width) {
  uint64_t v = 0;
  for (unsigned i = 0; i < width; ++i) v |= uint64_t{p[i]} << (8 * i);
  return v;
}

inline void store_le(uint8_t* p, uint64_t v, unsigned width) {
  for (unsigned i = 0; i < width; ++i) p[i] = static_cast<uint8_t>(v >> (8 * i));
}

inline void append_le(Bytes& out, uint64_t v, unsigned width) {
  for (unsigned i = 0; i < width; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

template <typename T>
inline T byte_reverse(T v) {
  T out = 0;
  for (size_t i = 0; i < sizeof(T); ++i) {
    out = static_cast<T>((out << 8) | (v & 0xFF));
    v = static_cast<T>(v >> 8);
  }
  return out;
}

template <typename T>
inline T load_le_t(const uint8_t* p) {
  T v;
  std::memcpy(&v, p, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) v = byte_reverse(v);
  return v;
}

template <typename T>
inline void store_le_t(uint8_t* p, T v) {
  if constexpr (std::endian::native == std::endian::big) v = byte_reverse(v);
  std::memcpy(p, &v, sizeof(T));
}

/// Unsigned LEB128.
inline void append_varint(Bytes& out, uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<uint8_t>(v | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<uint8_t>(v));
}

inline size_t varint_size(uint64_t v) {
  size_t n = 1;
  while (v >= 0x80) {
    v >>= 7;
    ++n;
  }
  return n;
}

/// Bounds-checked cursor over untrusted bytes. Every failure throws a
/// Corrupt error naming the absolute offset (base + position).
class ByteReader {
 public:
  explicit ByteReader(ByteView data, size_t base_offset = 0) : data_(data), base_(base_offset) {}

  size_t position() const { return pos_; }
  size_t offset() const { return base_ + pos_; }
  size_t remaining() const { return data_.size() - pos_; }
  bool at_end() const { return pos_ == data_.size(); }

  uint8_t u8() {
    need(1, "byte");
    return data_[pos_++];
  }

  uint64_t le(unsigned width) {
    need(width, "integer");
    uint64_t v = load_le(data_.data() + pos_, width);
    pos_ += width;
    return v;
  }

  uint64_t varint() {
    uint64_t v = 0;
    size_t start = pos_;
    for (unsigned i = 0; i < 10; ++i) {
      if (pos_ >= data_.size()) {
        fail(ErrorCode::Corrupt, "truncated varint at offset " + std::to_string(base_ + start));
      }
      uint8_t b = data_[pos_++];
      if (i == 9 && b > 1) break;
      v |= uint64_t{b & 0x7Fu} << (7 * i);
      if ((b & 0x80) == 0) return v;
    }
    fail(ErrorCode::Corrupt, "varint overflow at offset " + std::to_string(base_ + start));
  }

  /// Varint that must not exceed `max`; used for counts that size allocations.
  uint64_t varint_max(uint64_t max, const char* what) {
    size_t start = offset();
    uint64_t v = varint();
    if (v > max) {
      fail(ErrorCode::Corrupt, std::string(what) + " out of range at offset " + std::to_string(start));
    }
    return v;
  }

  ByteView take(size_t n) {
    need(n, "section");
    ByteView v = data_.subspan(pos_, n);
    pos_ += n;
    return v;
  }

  ByteView rest() { return take(remaining()); }

 private:
  void need(size_t n, const char* what) {
    if (n > remaining()) {
      fail(ErrorCode::Corrupt,
           std::string("truncated ") + what + " at offset " + std::to_string(base_ + pos_));
    }
  }

  ByteView data_;
  size_t base_;
  size_t pos_ = 0;
};

}  // namespace gp
