// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

#include "codecs/common.hpp"

namespace gp {

using namespace codec_util;

// Terminal sink. Output layout: type descriptor, varint element count,
// varint lengths (strings only), then the payload verbatim.
CodecEntry make_store_codec() {
  CodecEntry e;
  e.id = id_of(CodecId::Store);
  e.name = "store";
  e.cost = {0.1, 0.1};
  e.signature = [](ByteView params) {
    no_params(params, "store");
    return CodecSignature{{TypeConstraint::any()}, {TypeConstraint::of({TypeTag::Bytes})}};
  };
  e.encode = [](ByteView params, std::span<const Stream> in) {
    no_params(params, "store");
    const Stream& s = in[0];
    Bytes out;
    out.reserve(s.payload.size() + 16);
    append_type(out, s.type);
    append_varint(out, s.element_count());
    for (uint64_t len : s.lengths) append_varint(out, len);
    out.insert(out.end(), s.payload.begin(), s.payload.end());
    EncodeResult r;
    r.outputs.push_back(Stream::of_bytes(std::move(out)));
    return r;
  };
  e.decode = [](ByteView params, std::span<const Stream> out, const DecodeLimits&) {
    no_params(params, "store");
    expect_count(out, 1, "store", "outputs");
    ByteReader in(out[0].payload);
    Stream s{read_type(in), {}, {}};
    uint64_t count = in.varint();
    if (s.type.tag == TypeTag::String) {
      if (count > in.remaining()) fail(ErrorCode::Corrupt, "store: string count exceeds data");
      s.lengths.resize(count);
      for (auto& len : s.lengths) len = in.varint();
    } else {
      uint64_t w = s.type.element_width();
      if (count > in.remaining() / w || count * w != in.remaining()) {
        fail(ErrorCode::Corrupt, "store: element count does not match payload");
      }
    }
    ByteView payload = in.rest();
    s.payload.assign(payload.begin(), payload.end());
    if (auto violation = validate_stream(s)) fail(ErrorCode::Corrupt, "store: " + *violation);
    return std::vector<Stream>{std::move(s)};
  };
  return e;
}

}  // namespace gp
