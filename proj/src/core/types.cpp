// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/types.hpp"

#include <numeric>

namespace gp {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Usage: return "usage";
    case ErrorCode::Type: return "type";
    case ErrorCode::Param: return "parameter";
    case ErrorCode::Version: return "version";
    case ErrorCode::Format: return "format";
    case ErrorCode::Corrupt: return "corrupt";
    case ErrorCode::Expansion: return "expansion";
    case ErrorCode::NotFound: return "not-found";
    case ErrorCode::Config: return "config";
    case ErrorCode::Limit: return "limit";
    case ErrorCode::Internal: return "internal";
  }
  return "unknown";
}

bool valid_numeric_width(uint64_t w) { return w == 1 || w == 2 || w == 4 || w == 8; }

bool MessageType::valid() const {
  switch (tag) {
    case TypeTag::Bytes:
    case TypeTag::String: return width == 0;
    case TypeTag::Struct: return width >= 1;
    case TypeTag::Numeric: return valid_numeric_width(width);
  }
  return false;
}

std::string MessageType::to_string() const {
  switch (tag) {
    case TypeTag::Bytes: return "bytes";
    case TypeTag::String: return "string";
    case TypeTag::Struct: return "struct(" + std::to_string(width) + ")";
    case TypeTag::Numeric: return "numeric(" + std::to_string(width) + ")";
  }
  return "invalid";
}

void append_type(Bytes& out, MessageType t) {
  out.push_back(static_cast<uint8_t>(t.tag));
  if (t.has_width()) append_varint(out, t.width);
}

MessageType read_type(ByteReader& in) {
  size_t at = in.offset();
  uint8_t tag = in.u8();
  if (tag > 3) fail(ErrorCode::Corrupt, "bad type tag at offset " + std::to_string(at));
  MessageType t{static_cast<TypeTag>(tag), 0};
  if (t.has_width()) t.width = static_cast<uint32_t>(in.varint_max(UINT32_MAX, "type width"));
  if (!t.valid()) fail(ErrorCode::Corrupt, "invalid type " + t.to_string() + " at offset " + std::to_string(at));
  return t;
}

Stream Stream::of_strings(const std::vector<std::string>& items) {
  Stream s{MessageType::string(), {}, {}};
  for (const auto& item : items) {
    s.payload.insert(s.payload.end(), item.begin(), item.end());
    s.lengths.push_back(item.size());
  }
  return s;
}

size_t Stream::element_count() const {
  if (type.tag == TypeTag::String) return lengths.size();
  return payload.size() / type.element_width();
}

ByteView Stream::element(size_t i) const {
  if (type.tag != TypeTag::String) {
    uint32_t w = type.element_width();
    return ByteView(payload).subspan(i * w, w);
  }
  // Linear scan; callers iterating strings should walk offsets themselves.
  size_t offset = 0;
  for (size_t j = 0; j < i; ++j) offset += lengths[j];
  return ByteView(payload).subspan(offset, lengths[i]);
}

std::vector<uint64_t> Stream::values() const {
  std::vector<uint64_t> out(element_count());
  for (size_t i = 0; i < out.size(); ++i) out[i] = value(i);
  return out;
}

std::vector<std::string> Stream::strings() const {
  std::vector<std::string> out;
  size_t offset = 0;
  for (uint64_t len : lengths) {
    out.emplace_back(reinterpret_cast<const char*>(payload.data()) + offset, len);
    offset += len;
  }
  return out;
}

std::optional<std::string> validate_stream(const Stream& s) {
  if (!s.type.valid()) return "invalid message type " + s.type.to_string();
  if (s.type.tag != TypeTag::String && !s.lengths.empty()) {
    return "lengths present on non-string stream";
  }
  if (s.type.has_width() && s.payload.size() % s.type.width != 0) {
    return "payload of " + std::to_string(s.payload.size()) + " bytes is not a multiple of width " +
           std::to_string(s.type.width);
  }
  if (s.type.tag == TypeTag::String) {
    uint64_t total = 0;
    for (uint64_t len : s.lengths) {
      if (len > s.payload.size() - std::min<uint64_t>(total, s.payload.size())) {
        return "string lengths exceed payload size";
      }
      total += len;
    }
    if (total != s.payload.size()) return "string lengths do not sum to payload size";
  }
  return std::nullopt;
}

void require_valid(const Stream& s, const char* context) {
  if (auto violation = validate_stream(s)) fail(ErrorCode::Type, std::string(context) + ": " + *violation);
}

}  // namespace gp
