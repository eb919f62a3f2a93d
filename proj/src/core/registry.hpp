// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "core/types.hpp"

namespace gp {

inline constexpr uint32_t kMinFormatVersion = 1;
inline constexpr uint32_t kMaxFormatVersion = 2;

/// Wire-frozen identifiers of the standard codec library.
enum class CodecId : uint32_t {
  Store = 0,
  Delta = 1,
  Transpose = 2,
  Tokenize = 3,
  Rle = 4,
  Mtf = 5,
  Bitpack = 6,
  Huffman = 7,
  Lz = 8,
  FieldSplit = 9,
  Concat = 10,
  Interpret = 11,
};

inline constexpr uint32_t id_of(CodecId id) { return static_cast<uint32_t>(id); }

struct CodecSpec {
  uint32_t codec_id = 0;
  Bytes params;
  uint32_t min_format_version = kMinFormatVersion;

  friend bool operator==(const CodecSpec&, const CodecSpec&) = default;
};

bool check_version(const CodecSpec& spec, uint32_t active_format_version);

/// Pattern over message types: a set of admissible tags, optionally pinned
/// to one width. Output constraints may instead require equality with an
/// input's type.
struct TypeConstraint {
  uint8_t tags = 0;
  uint32_t width = 0;  // 0 = any width
  int same_as_input = -1;

  static constexpr uint8_t bit(TypeTag t) { return uint8_t(1u << static_cast<unsigned>(t)); }
  static TypeConstraint any() { return {0x0F, 0, -1}; }
  static TypeConstraint of(std::initializer_list<TypeTag> ts, uint32_t width = 0) {
    TypeConstraint c{0, width, -1};
    for (TypeTag t : ts) c.tags |= bit(t);
    return c;
  }
  static TypeConstraint same_as(int input) { return {0x0F, 0, input}; }

  bool accepts(MessageType t) const;
  std::string to_string() const;
};

struct CodecSignature {
  std::vector<TypeConstraint> inputs;
  std::vector<TypeConstraint> outputs;
};

struct EncodeResult {
  std::vector<Stream> outputs;
  Bytes wire_params;  // what the decoder receives; may differ from the configured params
};

/// Upper bound on bytes a single decoder invocation may regenerate.
struct DecodeLimits {
  uint64_t max_output_bytes = uint64_t{1} << 32;
};

/// Deterministic abstract cost per input byte, used as the speed objective
/// during training.
struct CostModel {
  double encode_per_byte = 1.0;
  double decode_per_byte = 1.0;
};

struct CodecEntry {
  uint32_t id = 0;
  std::string name;
  uint32_t min_format_version = kMinFormatVersion;
  std::function<CodecSignature(ByteView params)> signature;
  std::function<EncodeResult(ByteView params, std::span<const Stream> inputs)> encode;
  std::function<std::vector<Stream>(ByteView wire_params, std::span<const Stream> outputs,
                                    const DecodeLimits& limits)>
      decode;
  CostModel cost;
  // Text form of configured params ("key=value,..."); empty functions mean
  // the codec takes no configured params.
  std::function<std::string(ByteView params)> params_to_text;
  std::function<Bytes(std::string_view text)> params_from_text;

  CodecSpec spec(Bytes params = {}) const { return {id, std::move(params), min_format_version}; }
};

/// Maps wire ids to codecs. Built once, then shared read-only.
class CodecRegistry {
 public:
  void register_codec(CodecEntry entry);

  const CodecEntry* find(uint32_t id) const;
  const CodecEntry* find(std::string_view name) const;
  const CodecEntry& get(uint32_t id) const;
  const CodecEntry& get(std::string_view name) const;
  std::vector<uint32_t> ids() const;

  /// The standard library (ids 0-11).
  static const CodecRegistry& standard();

 private:
  std::map<uint32_t, CodecEntry> entries_;
};

/// Registers ids 0-11 into `registry`.
void register_standard_codecs(CodecRegistry& registry);

}  // namespace gp
