// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstring>

#include "codecs/common.hpp"
#include "codecs/kernels.hpp"

namespace gp {
namespace kernels {

size_t lz_bound(size_t n) { return n + n / 255 + 16; }

}  // namespace kernels

using namespace codec_util;

namespace {

constexpr unsigned kDefaultDepth = 16;
constexpr unsigned kMaxDepth = 256;
constexpr unsigned kHashBits = 17;
constexpr size_t kWindowMask = kernels::kLzWindow - 1;

inline uint32_t hash4(const uint8_t* p) {
  uint32_t v;
  std::memcpy(&v, p, 4);
  return (v * 2654435761u) >> (32 - kHashBits);
}

void put_length(Bytes& out, size_t extra) {
  while (extra >= 255) {
    out.push_back(255);
    extra -= 255;
  }
  out.push_back(static_cast<uint8_t>(extra));
}

void emit_sequence(Bytes& out, const uint8_t* literals, size_t lit_len, size_t offset, size_t match_len) {
  const bool has_match = match_len != 0;
  size_t m = has_match ? match_len - kernels::kLzMinMatch : 0;
  uint8_t token = static_cast<uint8_t>((std::min<size_t>(lit_len, 15) << 4) | std::min<size_t>(m, 15));
  out.push_back(token);
  if (lit_len >= 15) put_length(out, lit_len - 15);
  out.insert(out.end(), literals, literals + lit_len);
  if (!has_match) return;
  append_le(out, offset, 3);
  if (m >= 15) put_length(out, m - 15);
}

// Sequences of (literal run, match). Token byte: literal length in the high
// nibble, match length minus 4 in the low nibble, 15 meaning "continued in
// 255-saturated extra bytes". Offsets are 3 bytes little-endian. The final
// sequence carries literals only and ends the stream.
Bytes lz_compress(ByteView in, unsigned depth) {
  Bytes out;
  const size_t n = in.size();
  if (n == 0) return out;
  out.reserve(kernels::lz_bound(n));
  const uint8_t* src = in.data();
  std::vector<int64_t> head(size_t{1} << kHashBits, -1);
  std::vector<int64_t> chain(std::min(n, kernels::kLzWindow), -1);

  const bool wraps = n > kernels::kLzWindow;
  auto slot = [&](size_t p) { return wraps ? (p & kWindowMask) : p; };
  auto insert = [&](size_t pos) {
    uint32_t h = hash4(src + pos);
    chain[slot(pos)] = head[h];
    head[h] = static_cast<int64_t>(pos);
  };

  size_t anchor = 0;
  size_t pos = 0;
  while (pos + kernels::kLzMinMatch <= n) {
    size_t best_len = 0, best_off = 0;
    int64_t cand = head[hash4(src + pos)];
    for (unsigned d = 0; d < depth && cand >= 0; ++d) {
      size_t c = static_cast<size_t>(cand);
      if (pos - c > kernels::kLzWindow - 1) break;
      if (pos + best_len >= n) break;
      if (best_len == 0 || src[c + best_len] == src[pos + best_len]) {
        size_t len = 0;
        while (pos + len < n && src[c + len] == src[pos + len]) ++len;
        if (len > best_len) {
          best_len = len;
          best_off = pos - c;
        }
      }
      cand = chain[slot(c)];
      if (cand >= 0 && static_cast<size_t>(cand) >= c) break;
    }
    if (best_len >= kernels::kLzMinMatch) {
      emit_sequence(out, src + anchor, pos - anchor, best_off, best_len);
      size_t end = pos + best_len;
      for (; pos < end; ++pos) {
        if (pos + kernels::kLzMinMatch <= n) insert(pos);
      }
      anchor = pos;
    } else {
      insert(pos);
      ++pos;
    }
  }
  emit_sequence(out, src + anchor, n - anchor, 0, 0);
  return out;
}

size_t get_length(ByteReader& in, size_t base) {
  size_t len = base;
  for (;;) {
    uint8_t b = in.u8();
    len += b;
    if (b != 255) return len;
  }
}

Bytes lz_decompress(ByteView data, const DecodeLimits& limits) {
  Bytes out;
  ByteReader in(data);
  while (!in.at_end()) {
    uint8_t token = in.u8();
    size_t lit = token >> 4;
    if (lit == 15) lit = get_length(in, 15);
    ByteView literals = in.take(lit);
    charge(limits, out.size() + lit, "lz");
    out.insert(out.end(), literals.begin(), literals.end());
    if (in.at_end()) break;
    size_t offset = in.le(3);
    size_t match = (token & 0x0F) + kernels::kLzMinMatch;
    if ((token & 0x0F) == 15) match = get_length(in, match);
    if (offset == 0 || offset > out.size()) fail(ErrorCode::Corrupt, "lz: match offset out of range");
    charge(limits, out.size() + match, "lz");
    size_t from = out.size() - offset;
    out.resize(out.size() + match);
    uint8_t* dst = out.data() + out.size() - match;
    const uint8_t* s = out.data() + from;
    for (size_t i = 0; i < match; ++i) dst[i] = s[i];
  }
  return out;
}

unsigned depth_of(ByteView params) {
  if (params.empty()) return kDefaultDepth;
  ByteReader in(params);
  uint64_t depth = in.varint();
  if (!in.at_end() || depth < 1 || depth > kMaxDepth) fail(ErrorCode::Param, "lz: depth must be in 1..256");
  return static_cast<unsigned>(depth);
}

}  // namespace

// Configured params: optional varint hash-chain depth (encoder only).
// Wire params: the regenerated type.
CodecEntry make_lz_codec() {
  CodecEntry e;
  e.id = id_of(CodecId::Lz);
  e.name = "lz";
  e.cost = {6.0, 1.0};
  e.signature = [](ByteView params) {
    depth_of(params);
    return CodecSignature{{TypeConstraint::any()}, {TypeConstraint::of({TypeTag::Bytes})}};
  };
  e.encode = [](ByteView params, std::span<const Stream> in) {
    unsigned depth = depth_of(params);
    EncodeResult r;
    if (in[0].type.tag == TypeTag::String) {
      r.outputs.push_back(Stream::of_bytes(lz_compress(flatten(in[0]), depth)));
    } else {
      r.outputs.push_back(Stream::of_bytes(lz_compress(in[0].payload, depth)));
    }
    append_type(r.wire_params, in[0].type);
    return r;
  };
  e.decode = [](ByteView params, std::span<const Stream> out, const DecodeLimits& limits) {
    MessageType t = params_type(params, "lz");
    expect_count(out, 1, "lz", "outputs");
    Bytes raw = lz_decompress(out[0].payload, limits);
    return std::vector<Stream>{unflatten(raw, t, limits, "lz")};
  };
  e.params_to_text = [](ByteView params) {
    return params.empty() ? std::string() : "depth=" + std::to_string(depth_of(params));
  };
  e.params_from_text = [](std::string_view text) {
    Bytes out;
    for (auto& [k, v] : split_kv(text, "lz")) {
      if (k != "depth") fail(ErrorCode::Config, "lz: unknown parameter '" + k + "'");
      uint64_t depth = parse_uint(v, "lz");
      if (depth < 1 || depth > kMaxDepth) fail(ErrorCode::Config, "lz: depth must be in 1..256");
      out.clear();
      if (depth != kDefaultDepth) append_varint(out, depth);
    }
    return out;
  };
  return e;
}

}  // namespace gp
