// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstring>

#include "codecs/common.hpp"

namespace gp {

using namespace codec_util;

namespace {

const TypeConstraint kElementTyped = TypeConstraint::of({TypeTag::Struct, TypeTag::Numeric});
constexpr uint64_t kMaxRun = UINT32_MAX;

}  // namespace

// Outputs: values (same type, adjacent values differ) and run lengths as
// numeric(4). Runs longer than 2^32-1 are split, which is the only case where
// adjacent values repeat.
CodecEntry make_rle_codec() {
  CodecEntry e;
  e.id = id_of(CodecId::Rle);
  e.name = "rle";
  e.cost = {0.8, 0.6};
  e.signature = [](ByteView params) {
    no_params(params, "rle");
    return CodecSignature{{kElementTyped},
                          {TypeConstraint::same_as(0), TypeConstraint::of({TypeTag::Numeric}, 4)}};
  };
  e.encode = [](ByteView params, std::span<const Stream> in) {
    no_params(params, "rle");
    const Stream& s = in[0];
    expect_type(s, kElementTyped, "rle");
    const size_t w = s.type.width;
    const size_t n = s.element_count();
    Stream values{s.type, {}, {}};
    Stream runs{MessageType::numeric(4), {}, {}};
    size_t i = 0;
    while (i < n) {
      const uint8_t* v = s.payload.data() + i * w;
      size_t j = i + 1;
      while (j < n && j - i < kMaxRun && std::memcmp(v, s.payload.data() + j * w, w) == 0) ++j;
      values.payload.insert(values.payload.end(), v, v + w);
      append_le(runs.payload, j - i, 4);
      i = j;
    }
    EncodeResult r;
    r.outputs.push_back(std::move(values));
    r.outputs.push_back(std::move(runs));
    return r;
  };
  e.decode = [](ByteView params, std::span<const Stream> out, const DecodeLimits& limits) {
    no_params(params, "rle");
    expect_count(out, 2, "rle", "outputs");
    const Stream& values = out[0];
    const Stream& runs = out[1];
    expect_type(values, kElementTyped, "rle");
    expect_type(runs, TypeConstraint::of({TypeTag::Numeric}, 4), "rle");
    if (values.element_count() != runs.element_count()) fail(ErrorCode::Corrupt, "rle: values/runs count mismatch");
    const size_t w = values.type.width;
    uint64_t total = 0;
    for (size_t i = 0; i < runs.element_count(); ++i) {
      uint64_t run = runs.value(i);
      if (run == 0) fail(ErrorCode::Corrupt, "rle: zero-length run");
      total += run;
      charge_product(limits, total, w, "rle");
    }
    Stream s{values.type, {}, {}};
    s.payload.resize(total * w);
    uint8_t* dst = s.payload.data();
    for (size_t i = 0; i < runs.element_count(); ++i) {
      const uint8_t* v = values.payload.data() + i * w;
      for (uint64_t k = runs.value(i); k > 0; --k, dst += w) std::memcpy(dst, v, w);
    }
    return std::vector<Stream>{std::move(s)};
  };
  return e;
}

}  // namespace gp
