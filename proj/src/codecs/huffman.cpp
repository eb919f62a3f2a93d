// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <numeric>

#include "codecs/common.hpp"
#include "codecs/kernels.hpp"

namespace gp {
namespace kernels {

CodeLengths huffman_code_lengths(const std::array<uint64_t, 256>& counts, unsigned max_bits) {
  struct Item {
    uint64_t weight;
    int symbol;  // >= 0 for leaves
    uint32_t left, right;
  };
  std::vector<Item> arena;
  std::vector<uint32_t> leaves;
  for (int s = 0; s < 256; ++s) {
    if (counts[s] != 0) {
      leaves.push_back(static_cast<uint32_t>(arena.size()));
      arena.push_back({counts[s], s, 0, 0});
    }
  }
  std::stable_sort(leaves.begin(), leaves.end(),
                   [&](uint32_t a, uint32_t b) { return arena[a].weight < arena[b].weight; });
  const size_t n = leaves.size();
  if (n < 2 || n > (size_t{1} << max_bits)) fail(ErrorCode::Internal, "huffman: unsupported alphabet size");

  // Package-merge: each round pairs adjacent items of the previous list and
  // merges the packages with the leaves; the first 2n-2 items of the final
  // list determine the optimal length-limited code.
  std::vector<uint32_t> list = leaves;
  for (unsigned level = 1; level < max_bits; ++level) {
    std::vector<uint32_t> packages;
    for (size_t i = 0; i + 1 < list.size(); i += 2) {
      packages.push_back(static_cast<uint32_t>(arena.size()));
      arena.push_back({arena[list[i]].weight + arena[list[i + 1]].weight, -1, list[i], list[i + 1]});
    }
    std::vector<uint32_t> merged;
    merged.reserve(leaves.size() + packages.size());
    size_t a = 0, b = 0;
    while (a < leaves.size() || b < packages.size()) {
      if (b == packages.size() || (a < leaves.size() && arena[leaves[a]].weight <= arena[packages[b]].weight)) {
        merged.push_back(leaves[a++]);
      } else {
        merged.push_back(packages[b++]);
      }
    }
    list = std::move(merged);
  }

  CodeLengths lengths{};
  std::vector<uint32_t> stack;
  for (size_t i = 0; i < 2 * n - 2; ++i) {
    stack.push_back(list[i]);
    while (!stack.empty()) {
      const Item& it = arena[stack.back()];
      stack.pop_back();
      if (it.symbol >= 0) {
        ++lengths[it.symbol];
      } else {
        stack.push_back(it.left);
        stack.push_back(it.right);
      }
    }
  }
  return lengths;
}

std::array<uint16_t, 256> canonical_codes(const CodeLengths& lengths) {
  std::array<uint16_t, 256> codes{};
  std::array<uint32_t, kHuffmanMaxBits + 2> bl_count{};
  for (uint8_t len : lengths) bl_count[len]++;
  bl_count[0] = 0;
  std::array<uint32_t, kHuffmanMaxBits + 2> next{};
  uint32_t code = 0;
  for (unsigned bits = 1; bits <= kHuffmanMaxBits; ++bits) {
    code = (code + bl_count[bits - 1]) << 1;
    next[bits] = code;
  }
  for (int s = 0; s < 256; ++s) {
    if (lengths[s] != 0) codes[s] = static_cast<uint16_t>(next[lengths[s]]++);
  }
  return codes;
}

}  // namespace kernels

using namespace codec_util;

namespace {

enum : uint8_t { kSingleSymbol = 0, kTableRuns = 1, kTableNibbles = 2 };

void write_table(Bytes& out, const kernels::CodeLengths& lengths) {
  Bytes runs;
  for (size_t i = 0; i < 256;) {
    size_t j = i + 1;
    while (j < 256 && j - i < 16 && lengths[j] == lengths[i]) ++j;
    runs.push_back(static_cast<uint8_t>((lengths[i] << 4) | (j - i - 1)));
    i = j;
  }
  if (runs.size() < 128) {
    out.push_back(kTableRuns);
    append_varint(out, runs.size());
    out.insert(out.end(), runs.begin(), runs.end());
  } else {
    out.push_back(kTableNibbles);
    for (size_t i = 0; i < 256; i += 2) out.push_back(static_cast<uint8_t>(lengths[i] | (lengths[i + 1] << 4)));
  }
}

kernels::CodeLengths read_table(ByteReader& in, uint8_t mode) {
  kernels::CodeLengths lengths{};
  if (mode == kTableNibbles) {
    ByteView raw = in.take(128);
    for (size_t i = 0; i < 128; ++i) {
      lengths[2 * i] = raw[i] & 0x0F;
      lengths[2 * i + 1] = raw[i] >> 4;
    }
    return lengths;
  }
  uint64_t count = in.varint_max(256, "huffman table run count");
  size_t pos = 0;
  for (uint64_t r = 0; r < count; ++r) {
    uint8_t b = in.u8();
    size_t run = (b & 0x0F) + 1u;
    if (pos + run > 256) fail(ErrorCode::Corrupt, "huffman: table overruns alphabet");
    std::fill_n(lengths.begin() + pos, run, static_cast<uint8_t>(b >> 4));
    pos += run;
  }
  if (pos != 256) fail(ErrorCode::Corrupt, "huffman: incomplete table");
  return lengths;
}

Bytes huffman_encode(ByteView data) {
  Bytes out;
  append_varint(out, data.size());
  if (data.empty()) return out;
  std::array<uint64_t, 256> counts{};
  for (uint8_t b : data) counts[b]++;
  size_t distinct = std::count_if(counts.begin(), counts.end(), [](uint64_t c) { return c != 0; });
  if (distinct == 1) {
    out.push_back(kSingleSymbol);
    out.push_back(data[0]);
    return out;
  }
  auto lengths = kernels::huffman_code_lengths(counts, kernels::kHuffmanMaxBits);
  auto codes = kernels::canonical_codes(lengths);
  write_table(out, lengths);

  uint64_t total_bits = 0;
  for (int s = 0; s < 256; ++s) total_bits += counts[s] * lengths[s];
  size_t start = out.size();
  out.resize(start + (total_bits + 7) / 8, 0);
  uint8_t* dst = out.data() + start;
  uint64_t acc = 0;
  unsigned filled = 0;
  for (uint8_t b : data) {
    acc = (acc << lengths[b]) | codes[b];
    filled += lengths[b];
    while (filled >= 8) {
      filled -= 8;
      *dst++ = static_cast<uint8_t>(acc >> filled);
    }
  }
  if (filled > 0) *dst = static_cast<uint8_t>(acc << (8 - filled));
  return out;
}

Bytes huffman_decode(ByteView data, const DecodeLimits& limits) {
  ByteReader in(data);
  uint64_t n = in.varint();
  charge(limits, n, "huffman");
  if (n == 0) {
    if (!in.at_end()) fail(ErrorCode::Corrupt, "huffman: trailing bytes");
    return {};
  }
  uint8_t mode = in.u8();
  if (mode == kSingleSymbol) {
    uint8_t sym = in.u8();
    if (!in.at_end()) fail(ErrorCode::Corrupt, "huffman: trailing bytes");
    return Bytes(n, sym);
  }
  if (mode != kTableRuns && mode != kTableNibbles) fail(ErrorCode::Corrupt, "huffman: unknown mode");
  auto lengths = read_table(in, mode);

  unsigned max_len = 0;
  uint64_t kraft = 0;
  for (uint8_t len : lengths) {
    if (len != 0) {
      max_len = std::max<unsigned>(max_len, len);
      kraft += uint64_t{1} << (kernels::kHuffmanMaxBits - len);
    }
  }
  if (max_len == 0 || kraft > (uint64_t{1} << kernels::kHuffmanMaxBits)) {
    fail(ErrorCode::Corrupt, "huffman: invalid code lengths");
  }
  ByteView bits = in.rest();
  if (n > bits.size() * 8) fail(ErrorCode::Corrupt, "huffman: symbol count exceeds bitstream");

  auto codes = kernels::canonical_codes(lengths);
  // Entry: symbol in the low byte, code length above it; 0 marks an unused slot.
  std::vector<uint16_t> table(size_t{1} << max_len, 0);
  for (int s = 0; s < 256; ++s) {
    unsigned len = lengths[s];
    if (len == 0) continue;
    size_t first = size_t{codes[s]} << (max_len - len);
    size_t count = size_t{1} << (max_len - len);
    std::fill_n(table.begin() + first, count, static_cast<uint16_t>((len << 8) | s));
  }

  Bytes out(n);
  const uint64_t total_bits = uint64_t{bits.size()} * 8;
  uint64_t bitpos = 0;
  uint64_t acc = 0;
  unsigned avail = 0;
  size_t next_byte = 0;
  const uint64_t mask = (uint64_t{1} << max_len) - 1;
  for (uint64_t i = 0; i < n; ++i) {
    while (avail < max_len) {
      uint8_t b = next_byte < bits.size() ? bits[next_byte] : 0;
      ++next_byte;
      acc = (acc << 8) | b;
      avail += 8;
    }
    uint16_t entry = table[(acc >> (avail - max_len)) & mask];
    unsigned len = entry >> 8;
    if (len == 0) fail(ErrorCode::Corrupt, "huffman: invalid code in bitstream");
    bitpos += len;
    if (bitpos > total_bits) fail(ErrorCode::Corrupt, "huffman: bitstream truncated");
    out[i] = static_cast<uint8_t>(entry & 0xFF);
    avail -= len;
  }
  if ((bitpos + 7) / 8 != bits.size()) fail(ErrorCode::Corrupt, "huffman: trailing bitstream bytes");
  return out;
}

}  // namespace

// Wire params: the regenerated type. Output: varint symbol count, then a
// mode byte (single symbol, run-compacted table, or nibble table) and the
// canonical-code bitstream (MSB-first).
CodecEntry make_huffman_codec() {
  CodecEntry e;
  e.id = id_of(CodecId::Huffman);
  e.name = "huffman";
  e.cost = {4.0, 4.5};
  e.signature = [](ByteView params) {
    no_params(params, "huffman");
    return CodecSignature{{TypeConstraint::any()}, {TypeConstraint::of({TypeTag::Bytes})}};
  };
  e.encode = [](ByteView params, std::span<const Stream> in) {
    no_params(params, "huffman");
    EncodeResult r;
    if (in[0].type.tag == TypeTag::String) {
      r.outputs.push_back(Stream::of_bytes(huffman_encode(flatten(in[0]))));
    } else {
      r.outputs.push_back(Stream::of_bytes(huffman_encode(in[0].payload)));
    }
    append_type(r.wire_params, in[0].type);
    return r;
  };
  e.decode = [](ByteView params, std::span<const Stream> out, const DecodeLimits& limits) {
    MessageType t = params_type(params, "huffman");
    expect_count(out, 1, "huffman", "outputs");
    Bytes raw = huffman_decode(out[0].payload, limits);
    return std::vector<Stream>{unflatten(raw, t, limits, "huffman")};
  };
  return e;
}

}  // namespace gp
