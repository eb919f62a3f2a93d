// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

// delta, transpose and mtf: same-size reversible transforms.

#include <numeric>

#include "codecs/common.hpp"
#include "codecs/kernels.hpp"

namespace gp {
namespace kernels {
namespace {

template <typename T>
void delta_encode_t(ByteView in, uint8_t* out) {
  T prev = 0;
  for (size_t i = 0; i + sizeof(T) <= in.size(); i += sizeof(T)) {
    T v = load_le_t<T>(in.data() + i);
    store_le_t<T>(out + i, static_cast<T>(v - prev));
    prev = v;
  }
}

template <typename T>
void delta_decode_t(ByteView in, uint8_t* out) {
  T acc = 0;
  for (size_t i = 0; i + sizeof(T) <= in.size(); i += sizeof(T)) {
    acc = static_cast<T>(acc + load_le_t<T>(in.data() + i));
    store_le_t<T>(out + i, acc);
  }
}

}  // namespace

void delta_encode(ByteView in, unsigned width, uint8_t* out) {
  switch (width) {
    case 1: delta_encode_t<uint8_t>(in, out); break;
    case 2: delta_encode_t<uint16_t>(in, out); break;
    case 4: delta_encode_t<uint32_t>(in, out); break;
    case 8: delta_encode_t<uint64_t>(in, out); break;
  }
}

void delta_decode(ByteView in, unsigned width, uint8_t* out) {
  switch (width) {
    case 1: delta_decode_t<uint8_t>(in, out); break;
    case 2: delta_decode_t<uint16_t>(in, out); break;
    case 4: delta_decode_t<uint32_t>(in, out); break;
    case 8: delta_decode_t<uint64_t>(in, out); break;
  }
}

void transpose(ByteView in, size_t k, uint8_t* out) {
  size_t n = in.size() / k;
  for (size_t i = 0; i < n; ++i) {
    const uint8_t* rec = in.data() + i * k;
    for (size_t r = 0; r < k; ++r) out[r * n + i] = rec[r];
  }
}

void untranspose(ByteView in, size_t k, uint8_t* out) {
  size_t n = in.size() / k;
  for (size_t r = 0; r < k; ++r) {
    const uint8_t* plane = in.data() + r * n;
    for (size_t i = 0; i < n; ++i) out[i * k + r] = plane[i];
  }
}

void mtf_encode(ByteView in, uint8_t* out) {
  std::array<uint8_t, 256> order;
  std::iota(order.begin(), order.end(), 0);
  for (size_t i = 0; i < in.size(); ++i) {
    uint8_t sym = in[i];
    uint8_t pos = 0;
    while (order[pos] != sym) ++pos;
    out[i] = pos;
    for (uint8_t j = pos; j > 0; --j) order[j] = order[j - 1];
    order[0] = sym;
  }
}

void mtf_decode(ByteView in, uint8_t* out) {
  std::array<uint8_t, 256> order;
  std::iota(order.begin(), order.end(), 0);
  for (size_t i = 0; i < in.size(); ++i) {
    uint8_t pos = in[i];
    uint8_t sym = order[pos];
    out[i] = sym;
    for (uint8_t j = pos; j > 0; --j) order[j] = order[j - 1];
    order[0] = sym;
  }
}

}  // namespace kernels

using namespace codec_util;

CodecEntry make_delta_codec() {
  CodecEntry e;
  e.id = id_of(CodecId::Delta);
  e.name = "delta";
  e.cost = {0.35, 0.35};
  e.signature = [](ByteView params) {
    no_params(params, "delta");
    return CodecSignature{{TypeConstraint::of({TypeTag::Numeric})}, {TypeConstraint::same_as(0)}};
  };
  e.encode = [](ByteView params, std::span<const Stream> in) {
    no_params(params, "delta");
    expect_type(in[0], TypeConstraint::of({TypeTag::Numeric}), "delta");
    Stream out{in[0].type, Bytes(in[0].payload.size()), {}};
    kernels::delta_encode(in[0].payload, in[0].type.width, out.payload.data());
    EncodeResult r;
    r.outputs.push_back(std::move(out));
    return r;
  };
  e.decode = [](ByteView params, std::span<const Stream> out, const DecodeLimits&) {
    no_params(params, "delta");
    expect_count(out, 1, "delta", "outputs");
    expect_type(out[0], TypeConstraint::of({TypeTag::Numeric}), "delta");
    Stream in{out[0].type, Bytes(out[0].payload.size()), {}};
    kernels::delta_decode(out[0].payload, out[0].type.width, in.payload.data());
    return std::vector<Stream>{std::move(in)};
  };
  return e;
}

CodecEntry make_transpose_codec() {
  static const TypeConstraint accepted = TypeConstraint::of({TypeTag::Struct, TypeTag::Numeric});
  CodecEntry e;
  e.id = id_of(CodecId::Transpose);
  e.name = "transpose";
  e.cost = {0.6, 0.6};
  e.signature = [](ByteView params) {
    no_params(params, "transpose");
    return CodecSignature{{accepted}, {TypeConstraint::of({TypeTag::Bytes})}};
  };
  e.encode = [](ByteView params, std::span<const Stream> in) {
    no_params(params, "transpose");
    expect_type(in[0], accepted, "transpose");
    EncodeResult r;
    Bytes out(in[0].payload.size());
    kernels::transpose(in[0].payload, in[0].type.width, out.data());
    r.outputs.push_back(Stream::of_bytes(std::move(out)));
    append_type(r.wire_params, in[0].type);
    return r;
  };
  e.decode = [](ByteView params, std::span<const Stream> out, const DecodeLimits&) {
    MessageType t = params_type(params, "transpose");
    if (!accepted.accepts(t)) fail(ErrorCode::Corrupt, "transpose: bad regenerated type");
    expect_count(out, 1, "transpose", "outputs");
    expect_type(out[0], TypeConstraint::of({TypeTag::Bytes}), "transpose");
    if (out[0].payload.size() % t.width != 0) fail(ErrorCode::Corrupt, "transpose: size not a multiple of width");
    Stream in{t, Bytes(out[0].payload.size()), {}};
    kernels::untranspose(out[0].payload, t.width, in.payload.data());
    return std::vector<Stream>{std::move(in)};
  };
  return e;
}

CodecEntry make_mtf_codec() {
  static const TypeConstraint accepted = TypeConstraint::of({TypeTag::Struct, TypeTag::Numeric}, 1);
  CodecEntry e;
  e.id = id_of(CodecId::Mtf);
  e.name = "mtf";
  e.cost = {2.0, 2.0};
  e.signature = [](ByteView params) {
    no_params(params, "mtf");
    return CodecSignature{{accepted}, {TypeConstraint::same_as(0)}};
  };
  e.encode = [](ByteView params, std::span<const Stream> in) {
    no_params(params, "mtf");
    expect_type(in[0], accepted, "mtf");
    Stream out{in[0].type, Bytes(in[0].payload.size()), {}};
    kernels::mtf_encode(in[0].payload, out.payload.data());
    EncodeResult r;
    r.outputs.push_back(std::move(out));
    return r;
  };
  e.decode = [](ByteView params, std::span<const Stream> out, const DecodeLimits&) {
    no_params(params, "mtf");
    expect_count(out, 1, "mtf", "outputs");
    expect_type(out[0], accepted, "mtf");
    Stream in{out[0].type, Bytes(out[0].payload.size()), {}};
    kernels::mtf_decode(out[0].payload, in.payload.data());
    return std::vector<Stream>{std::move(in)};
  };
  return e;
}

}  // namespace gp
