// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

// Shared binding helpers for the standard codecs.

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "core/registry.hpp"

namespace gp::codec_util {

inline void expect_count(std::span<const Stream> streams, size_t n, const char* codec, const char* what) {
  if (streams.size() != n) {
    fail(ErrorCode::Corrupt, std::string(codec) + ": expected " + std::to_string(n) + " " + what + ", got " +
                                 std::to_string(streams.size()));
  }
}

inline void expect_type(const Stream& s, TypeConstraint c, const char* codec) {
  if (!c.accepts(s.type)) {
    fail(ErrorCode::Type, std::string(codec) + ": input of type " + s.type.to_string() + " does not match " +
                              c.to_string());
  }
}

inline void charge(const DecodeLimits& limits, uint64_t bytes, const char* codec) {
  if (bytes > limits.max_output_bytes) {
    fail(ErrorCode::Limit, std::string(codec) + ": regenerated size exceeds decode limit");
  }
}

inline void charge_product(const DecodeLimits& limits, uint64_t count, uint64_t width, const char* codec) {
  if (width != 0 && count > limits.max_output_bytes / width) {
    fail(ErrorCode::Limit, std::string(codec) + ": regenerated size exceeds decode limit");
  }
}

inline void no_params(ByteView params, const char* codec) {
  if (!params.empty()) fail(ErrorCode::Param, std::string(codec) + " takes no parameters");
}

/// Serializes any stream to bytes: fixed-width payloads verbatim; strings as
/// varint count, varint lengths, then content.
Bytes flatten(const Stream& s);
/// Inverse of flatten for a known type; validates everything.
Stream unflatten(ByteView data, MessageType type, const DecodeLimits& limits, const char* codec);

/// Reads a wire-params type descriptor that must consume the whole buffer.
MessageType params_type(ByteView params, const char* codec);

/// "k=v,k=v" parsing for configured parameter text.
std::vector<std::pair<std::string, std::string>> split_kv(std::string_view text, const char* codec);
uint64_t parse_uint(std::string_view v, const char* codec);

std::string type_text(MessageType t);
MessageType parse_type_text(std::string_view v, const char* codec);

}  // namespace gp::codec_util

namespace gp {

CodecEntry make_store_codec();
CodecEntry make_delta_codec();
CodecEntry make_transpose_codec();
CodecEntry make_tokenize_codec();
CodecEntry make_rle_codec();
CodecEntry make_mtf_codec();
CodecEntry make_bitpack_codec();
CodecEntry make_huffman_codec();
CodecEntry make_lz_codec();
CodecEntry make_field_split_codec();
CodecEntry make_concat_codec();
CodecEntry make_interpret_codec();

}  // namespace gp

namespace gp {

/// True for text the decimal interpret mode round-trips exactly:
/// -?(0|[1-9][0-9]*) within int64 range, excluding "-0".
bool is_canonical_int64(std::string_view text);

/// Splits delimited text into alternating cells and separators. A separator
/// is the delimiter, "\n", "\r\n", or empty at end of input; delimiters and
/// newlines inside quotes belong to the cell. A trailing delimiter implies a
/// final empty cell. Concatenating all elements regenerates `data`.
Stream segment_delimited(ByteView data, uint8_t delim, uint8_t quote);

}  // namespace gp
