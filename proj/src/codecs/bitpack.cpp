// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

#include <bit>

#include "codecs/common.hpp"
#include "codecs/kernels.hpp"

namespace gp {
namespace kernels {

unsigned bitpack_width(uint64_t max_value) {
  return max_value == 0 ? 1u : static_cast<unsigned>(std::bit_width(max_value));
}

size_t bitpack_size(size_t count, unsigned bits) {
  // count * bits / 8 rounded up, without overflowing for large counts.
  return (count / 8) * bits + ((count % 8) * bits + 7) / 8;
}

void bitpack(std::span<const uint64_t> values, unsigned bits, uint8_t* out) {
  size_t bitpos = 0;
  for (uint64_t v : values) {
    unsigned remaining = bits;
    while (remaining > 0) {
      size_t byte = bitpos >> 3;
      unsigned shift = bitpos & 7;
      unsigned take = std::min(remaining, 8 - shift);
      out[byte] |= static_cast<uint8_t>((v & ((1u << take) - 1)) << shift);
      v >>= take;
      remaining -= take;
      bitpos += take;
    }
  }
}

void bitunpack(ByteView in, unsigned bits, std::span<uint64_t> values) {
  size_t bitpos = 0;
  for (uint64_t& v : values) {
    v = 0;
    unsigned got = 0;
    while (got < bits) {
      size_t byte = bitpos >> 3;
      unsigned shift = bitpos & 7;
      unsigned take = std::min(bits - got, 8 - shift);
      v |= uint64_t((in[byte] >> shift) & ((1u << take) - 1)) << got;
      got += take;
      bitpos += take;
    }
  }
}

}  // namespace kernels

using namespace codec_util;

// Output: bit width b (1 byte), varint count, then LSB-first packed values.
// Wire params: the numeric width, one byte.
CodecEntry make_bitpack_codec() {
  CodecEntry e;
  e.id = id_of(CodecId::Bitpack);
  e.name = "bitpack";
  e.cost = {1.2, 1.2};
  e.signature = [](ByteView params) {
    no_params(params, "bitpack");
    return CodecSignature{{TypeConstraint::of({TypeTag::Numeric})}, {TypeConstraint::of({TypeTag::Bytes})}};
  };
  e.encode = [](ByteView params, std::span<const Stream> in) {
    no_params(params, "bitpack");
    const Stream& s = in[0];
    expect_type(s, TypeConstraint::of({TypeTag::Numeric}), "bitpack");
    std::vector<uint64_t> values = s.values();
    uint64_t max = 0;
    for (uint64_t v : values) max = std::max(max, v);
    unsigned bits = kernels::bitpack_width(max);
    Bytes out;
    out.push_back(static_cast<uint8_t>(bits));
    append_varint(out, values.size());
    size_t header = out.size();
    out.resize(header + kernels::bitpack_size(values.size(), bits), 0);
    kernels::bitpack(values, bits, out.data() + header);
    EncodeResult r;
    r.outputs.push_back(Stream::of_bytes(std::move(out)));
    r.wire_params.push_back(static_cast<uint8_t>(s.type.width));
    return r;
  };
  e.decode = [](ByteView params, std::span<const Stream> out, const DecodeLimits& limits) {
    if (params.size() != 1 || !valid_numeric_width(params[0])) fail(ErrorCode::Corrupt, "bitpack: bad params");
    const unsigned w = params[0];
    expect_count(out, 1, "bitpack", "outputs");
    ByteReader in(out[0].payload);
    unsigned bits = in.u8();
    if (bits < 1 || bits > 8 * w) fail(ErrorCode::Corrupt, "bitpack: bad bit width");
    uint64_t count = in.varint();
    charge_product(limits, count, 8 + w, "bitpack");
    if (kernels::bitpack_size(count, bits) != in.remaining()) fail(ErrorCode::Corrupt, "bitpack: size mismatch");
    std::vector<uint64_t> values(count);
    kernels::bitunpack(in.rest(), bits, values);
    Stream s{MessageType::numeric(w), Bytes(count * w), {}};
    for (size_t i = 0; i < count; ++i) store_le(s.payload.data() + i * w, values[i], w);
    return std::vector<Stream>{std::move(s)};
  };
  return e;
}

}  // namespace gp
