// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/registry.hpp"

namespace gp {

enum class ParserKind { None, Sao, Csv };

std::string parser_name(ParserKind p);
ParserKind parse_parser_name(std::string_view name);

struct CsvOptions {
  uint8_t delimiter = ',';
  uint8_t quote = '"';
  bool header = true;

  friend bool operator==(const CsvOptions&, const CsvOptions&) = default;
};

/// Streams sharing one backend. Members are concatenated when there is more
/// than one; `type`, when set, is the stream type the backend was built for.
struct Cluster {
  std::vector<std::string> streams;
  std::string backend;  // graph description
  std::optional<MessageType> type;

  friend bool operator==(const Cluster&, const Cluster&) = default;
};

struct CompressorConfig {
  std::string name;
  uint32_t format_version = kMinFormatVersion;
  ParserKind parser = ParserKind::None;
  CsvOptions csv;  // used when parser is Csv
  std::vector<Cluster> clusters;

  friend bool operator==(const CompressorConfig&, const CompressorConfig&) = default;
};

/// Canonical JSON: sorted keys, two-space indent, backends in canonical
/// description form, trailing newline.
std::string serialize_compressor(const CompressorConfig& config);

/// Config errors name the line and column (syntax) or the JSON path.
CompressorConfig deserialize_compressor(std::string_view text,
                                        const CodecRegistry& registry = CodecRegistry::standard());

}  // namespace gp
