// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "engine/graph.hpp"
#include "profiles/config.hpp"

namespace gp {

struct NamedStream {
  std::string tag;
  Stream stream;
};

inline constexpr size_t kSaoHeaderSize = 28;
inline constexpr size_t kSaoRecordSize = 28;

/// header (struct(28)), sra0 (numeric(8)), sdec0 (struct(8)), is, mag
/// (struct(2)), xrpm, xdpm (struct(4)). Format error when the size does not
/// fit the layout.
std::vector<NamedStream> sao_parse(const Stream& file);
Stream sao_unparse(const std::vector<NamedStream>& streams);

/// Tags: "header" (first row cells and separators, when options.header and
/// there are at least two rows), then per column j "col<j>" and "sep<j>".
/// Columns whose cells are all canonical int64 are numeric(8). Returns
/// nullopt when rows have unequal cell counts; such files take the
/// generic path.
std::optional<std::vector<NamedStream>> csv_parse(const Stream& file, const CsvOptions& options = {});
Stream csv_unparse(const std::vector<NamedStream>& streams);

/// Open output of a frontend graph that still needs a backend.
struct Port {
  std::string tag;
  uint32_t node = 0;
  uint32_t output = 0;
  MessageType type;
};

/// Frontend nodes built into `builder`, rooted at `root`, with open ports.
struct FrontendPlan {
  GraphBuilder builder;
  uint32_t root = 0;
  std::vector<Port> ports;
};

/// nullopt when the parser does not apply to this input.
std::optional<FrontendPlan> plan_frontend(ParserKind parser, const CsvOptions& options, const Stream& input);

/// Backend for a port no cluster claims: numeric -> @numeric, string ->
/// @string, anything else -> @generic.
std::string default_backend(MessageType type);

/// A compressor built from a config. Immutable and shareable.
class Compressor {
 public:
  explicit Compressor(CompressorConfig config, const CodecRegistry& registry = CodecRegistry::standard());

  const CompressorConfig& config() const { return config_; }
  const GraphPtr& graph() const { return graph_; }

  /// Version error when a codec the config can select is gated above
  /// `format_version`.
  void check_format_version(uint32_t format_version) const;

  /// Whole frame for `input`.
  Bytes compress(ByteView input, uint32_t format_version) const;
  Bytes compress(ByteView input) const { return compress(input, config_.format_version); }

 private:
  CompressorConfig config_;
  const CodecRegistry* registry_;
  std::vector<GraphPtr> backends_;  // parallel to config_.clusters
  GraphPtr graph_;
};

CompressorConfig generic_config();
CompressorConfig sao_config();
CompressorConfig csv_config(const CsvOptions& options = {});

std::vector<std::string> profile_names();
/// "generic", "sao" or "csv"; NotFound otherwise.
CompressorConfig profile_config(std::string_view name);

}  // namespace gp
