// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "engine/graph.hpp"

namespace gp {

/// One executed codec. Its outputs occupy the next `output_count` slot ids.
struct Instruction {
  uint32_t codec_id = 0;
  Bytes params;  // wire params
  std::vector<uint64_t> inputs;
  uint64_t output_count = 0;

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

/// The selector-free record of one compression. Slot 0 is the original
/// input; instructions are in execution order.
struct ResolvedTrace {
  std::vector<Instruction> instructions;
  uint64_t slot_count = 1;
  std::vector<uint64_t> stored_slots;

  friend bool operator==(const ResolvedTrace&, const ResolvedTrace&) = default;
};

struct CompressResult {
  ResolvedTrace trace;
  std::vector<Stream> stored;  // parallel to trace.stored_slots
  double encode_cost = 0;      // abstract units from the codec cost model
  double decode_cost = 0;
  uint64_t expansions = 0;
};

/// Runs `root` on `input`, expanding selectors against the data. Every codec
/// must pass check_version(format_version).
CompressResult compress(const Graph& root, Stream input, uint32_t format_version,
                        const CodecRegistry& registry = CodecRegistry::standard());

/// Calls the selector of a Function node; fails if it returns nothing.
GraphPtr expand_selector(const GraphNode& node, std::span<const Stream> inputs);

/// Structural checks shared by the decoder and frame reader: slots are
/// produced before use, consumed at most once, and stored slots are exactly
/// the unconsumed ones.
void validate_trace(const ResolvedTrace& trace);

/// Regenerates slot 0 by running decoders in reverse execution order. Uses
/// only the codec registry.
Stream decompress_trace(const ResolvedTrace& trace, std::vector<Stream> stored,
                        const CodecRegistry& registry = CodecRegistry::standard(),
                        uint64_t max_output_bytes = uint64_t{1} << 34);

}  // namespace gp
