// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

#include "codecs/common.hpp"

#include <charconv>

namespace gp::codec_util {

Bytes flatten(const Stream& s) {
  if (s.type.tag != TypeTag::String) return s.payload;
  Bytes out;
  out.reserve(s.payload.size() + s.lengths.size() + 10);
  append_varint(out, s.lengths.size());
  for (uint64_t len : s.lengths) append_varint(out, len);
  out.insert(out.end(), s.payload.begin(), s.payload.end());
  return out;
}

Stream unflatten(ByteView data, MessageType type, const DecodeLimits& limits, const char* codec) {
  Stream s{type, {}, {}};
  if (type.tag != TypeTag::String) {
    if (type.has_width() && data.size() % type.width != 0) {
      fail(ErrorCode::Corrupt, std::string(codec) + ": payload not a multiple of element width");
    }
    s.payload.assign(data.begin(), data.end());
    return s;
  }
  ByteReader in(data);
  uint64_t count = in.varint_max(in.remaining(), "string count");
  s.lengths.resize(count);
  uint64_t total = 0;
  for (auto& len : s.lengths) {
    len = in.varint();
    total += len;
    if (len > data.size() || total > data.size()) fail(ErrorCode::Corrupt, std::string(codec) + ": bad string length");
  }
  if (total != in.remaining()) fail(ErrorCode::Corrupt, std::string(codec) + ": string lengths do not match content");
  charge(limits, total + 8 * count, codec);
  ByteView content = in.rest();
  s.payload.assign(content.begin(), content.end());
  return s;
}

MessageType params_type(ByteView params, const char* codec) {
  ByteReader in(params);
  MessageType t = read_type(in);
  if (!in.at_end()) fail(ErrorCode::Corrupt, std::string(codec) + ": trailing parameter bytes");
  return t;
}

std::vector<std::pair<std::string, std::string>> split_kv(std::string_view text, const char* codec) {
  std::vector<std::pair<std::string, std::string>> out;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(pos, end - pos);
    size_t eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      fail(ErrorCode::Config, std::string(codec) + ": expected key=value, got '" + std::string(item) + "'");
    }
    out.emplace_back(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
    pos = end + 1;
  }
  return out;
}

uint64_t parse_uint(std::string_view v, const char* codec) {
  uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
    fail(ErrorCode::Config, std::string(codec) + ": bad integer '" + std::string(v) + "'");
  }
  return out;
}

std::string type_text(MessageType t) {
  switch (t.tag) {
    case TypeTag::Bytes: return "bytes";
    case TypeTag::String: return "string";
    case TypeTag::Struct: return "struct" + std::to_string(t.width);
    case TypeTag::Numeric: return "numeric" + std::to_string(t.width);
  }
  return "?";
}

MessageType parse_type_text(std::string_view v, const char* codec) {
  if (v == "bytes") return MessageType::bytes();
  if (v == "string") return MessageType::string();
  MessageType t;
  if (v.starts_with("struct")) {
    t = MessageType::structure(static_cast<uint32_t>(parse_uint(v.substr(6), codec)));
  } else if (v.starts_with("numeric")) {
    t = MessageType::numeric(static_cast<uint32_t>(parse_uint(v.substr(7), codec)));
  } else {
    fail(ErrorCode::Config, std::string(codec) + ": unknown type '" + std::string(v) + "'");
  }
  if (!t.valid()) fail(ErrorCode::Config, std::string(codec) + ": invalid type '" + std::string(v) + "'");
  return t;
}

}  // namespace gp::codec_util
