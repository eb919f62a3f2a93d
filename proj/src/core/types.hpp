// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/bytes.hpp"

namespace gp {

enum class TypeTag : uint8_t { Bytes = 0, Struct = 1, Numeric = 2, String = 3 };

/// Message-set approximation: opaque bytes, fixed-size records, little-endian
/// integers, or sequences of byte strings.
struct MessageType {
  TypeTag tag = TypeTag::Bytes;
  uint32_t width = 0;  // Struct and Numeric only

  static MessageType bytes() { return {TypeTag::Bytes, 0}; }
  static MessageType structure(uint32_t k) { return {TypeTag::Struct, k}; }
  static MessageType numeric(uint32_t w) { return {TypeTag::Numeric, w}; }
  static MessageType string() { return {TypeTag::String, 0}; }

  bool has_width() const { return tag == TypeTag::Struct || tag == TypeTag::Numeric; }
  /// Bytes per element for fixed-width types; bytes streams count single bytes.
  uint32_t element_width() const { return has_width() ? width : 1; }

  bool valid() const;
  std::string to_string() const;

  friend bool operator==(const MessageType&, const MessageType&) = default;
};

bool valid_numeric_width(uint64_t w);

/// Appends tag byte plus varint width (fixed-width types only).
void append_type(Bytes& out, MessageType t);
MessageType read_type(ByteReader& in);

/// A typed message: the unit flowing along every graph edge.
struct Stream {
  MessageType type;
  Bytes payload;
  std::vector<uint64_t> lengths;  // String only

  static Stream of_bytes(Bytes b) { return {MessageType::bytes(), std::move(b), {}}; }
  static Stream of_struct(uint32_t k, Bytes b) { return {MessageType::structure(k), std::move(b), {}}; }
  static Stream of_numeric(uint32_t w, Bytes b) { return {MessageType::numeric(w), std::move(b), {}}; }
  static Stream of_strings(const std::vector<std::string>& items);
  template <typename T>
  static Stream of_values(uint32_t w, const std::vector<T>& values) {
    Stream s{MessageType::numeric(w), {}, {}};
    s.payload.reserve(values.size() * w);
    for (T v : values) append_le(s.payload, static_cast<uint64_t>(v), w);
    return s;
  }

  size_t element_count() const;
  ByteView element(size_t i) const;  // requires a validated stream

  /// Numeric element i, zero-extended.
  uint64_t value(size_t i) const { return load_le(payload.data() + i * type.width, type.width); }
  std::vector<uint64_t> values() const;
  std::vector<std::string> strings() const;

  friend bool operator==(const Stream&, const Stream&) = default;
};

/// Returns the first violated invariant, or nullopt when the stream is a
/// member of its message set.
std::optional<std::string> validate_stream(const Stream& s);

/// Throws a Type error when validate_stream reports a violation.
void require_valid(const Stream& s, const char* context);

}  // namespace gp
