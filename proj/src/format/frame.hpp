// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <string>

#include "engine/engine.hpp"

namespace gp {

inline constexpr std::array<uint8_t, 4> kFrameMagic = {0x5A, 0x4C, 0x47, 0x31};  // "ZLG1"

/// CRC-32C (Castagnoli, reflected, final xor).
uint32_t crc32c(ByteView data);

struct Frame {
  uint32_t format_version = kMinFormatVersion;
  ResolvedTrace trace;
  std::vector<Stream> stored;  // parallel to trace.stored_slots
};

struct ReadResult {
  Frame frame;
  size_t consumed = 0;  // bytes of this frame, including the checksum
};

/// Refuses (Version error) when any instruction's codec is gated above
/// `format_version`.
Bytes write_frame(const ResolvedTrace& trace, const std::vector<Stream>& stored, uint32_t format_version,
                  const CodecRegistry& registry = CodecRegistry::standard());

/// Parses one frame at the start of `data`; trailing bytes are left alone.
ReadResult read_frame(ByteView data, const CodecRegistry& registry = CodecRegistry::standard());

struct DecodeOptions {
  uint64_t max_output_bytes = uint64_t{1} << 32;
};

/// Decodes exactly one frame; trailing bytes are an error.
Stream decompress(ByteView data, const DecodeOptions& options = {},
                  const CodecRegistry& registry = CodecRegistry::standard());

/// Decodes back-to-back frames and concatenates their payloads.
Bytes decompress_all(ByteView data, const DecodeOptions& options = {},
                     const CodecRegistry& registry = CodecRegistry::standard());

/// Human-readable dump of one frame.
std::string inspect(const Frame& frame, size_t frame_size, const CodecRegistry& registry = CodecRegistry::standard());

}  // namespace gp
