// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

#include <string_view>
#include <unordered_map>

#include "codecs/common.hpp"

namespace gp {

using namespace codec_util;

namespace {

const TypeConstraint kTokenizable = TypeConstraint::of({TypeTag::Struct, TypeTag::Numeric, TypeTag::String});

uint32_t index_width(uint64_t alphabet_size) {
  uint64_t max_index = alphabet_size == 0 ? 0 : alphabet_size - 1;
  if (max_index <= 0xFF) return 1;
  if (max_index <= 0xFFFF) return 2;
  if (max_index <= 0xFFFFFFFFull) return 4;
  return 8;
}

}  // namespace

// Splits a stream into its alphabet (unique elements in first-appearance
// order, same type as the input) and per-element indices into it. Wire
// params: one byte holding the index width.
CodecEntry make_tokenize_codec() {
  CodecEntry e;
  e.id = id_of(CodecId::Tokenize);
  e.name = "tokenize";
  e.cost = {3.0, 1.0};
  e.signature = [](ByteView params) {
    no_params(params, "tokenize");
    return CodecSignature{{kTokenizable}, {TypeConstraint::same_as(0), TypeConstraint::of({TypeTag::Numeric})}};
  };
  e.encode = [](ByteView params, std::span<const Stream> in) {
    no_params(params, "tokenize");
    const Stream& s = in[0];
    expect_type(s, kTokenizable, "tokenize");
    const size_t n = s.element_count();
    const bool strings = s.type.tag == TypeTag::String;

    std::unordered_map<std::string_view, uint64_t> seen;
    seen.reserve(std::min<size_t>(n, 1 << 16));
    std::vector<uint64_t> indices(n);
    Stream alphabet{s.type, {}, {}};
    const char* base = reinterpret_cast<const char*>(s.payload.data());
    size_t offset = 0;
    for (size_t i = 0; i < n; ++i) {
      size_t len = strings ? s.lengths[i] : s.type.width;
      std::string_view key(base + offset, len);
      auto [it, inserted] = seen.try_emplace(key, seen.size());
      if (inserted) {
        alphabet.payload.insert(alphabet.payload.end(), key.begin(), key.end());
        if (strings) alphabet.lengths.push_back(len);
      }
      indices[i] = it->second;
      offset += len;
    }
    uint32_t iw = index_width(seen.size());
    Stream idx{MessageType::numeric(iw), {}, {}};
    idx.payload.resize(n * iw);
    for (size_t i = 0; i < n; ++i) store_le(idx.payload.data() + i * iw, indices[i], iw);

    EncodeResult r;
    r.outputs.push_back(std::move(alphabet));
    r.outputs.push_back(std::move(idx));
    r.wire_params.push_back(static_cast<uint8_t>(iw));
    return r;
  };
  e.decode = [](ByteView params, std::span<const Stream> out, const DecodeLimits& limits) {
    if (params.size() != 1 || !valid_numeric_width(params[0])) fail(ErrorCode::Corrupt, "tokenize: bad params");
    expect_count(out, 2, "tokenize", "outputs");
    const Stream& alphabet = out[0];
    const Stream& idx = out[1];
    expect_type(alphabet, kTokenizable, "tokenize");
    if (idx.type != MessageType::numeric(params[0])) fail(ErrorCode::Corrupt, "tokenize: index type mismatch");
    const size_t k = alphabet.element_count();
    const size_t n = idx.element_count();
    Stream s{alphabet.type, {}, {}};
    if (alphabet.type.tag == TypeTag::String) {
      std::vector<uint64_t> offsets(k + 1, 0);
      for (size_t j = 0; j < k; ++j) offsets[j + 1] = offsets[j] + alphabet.lengths[j];
      uint64_t total = 0;
      for (size_t i = 0; i < n; ++i) {
        uint64_t t = idx.value(i);
        if (t >= k) fail(ErrorCode::Corrupt, "tokenize: index out of range");
        total += alphabet.lengths[t] + 8;
        charge(limits, total, "tokenize");
      }
      s.lengths.resize(n);
      for (size_t i = 0; i < n; ++i) {
        uint64_t t = idx.value(i);
        s.payload.insert(s.payload.end(), alphabet.payload.begin() + offsets[t],
                         alphabet.payload.begin() + offsets[t + 1]);
        s.lengths[i] = alphabet.lengths[t];
      }
    } else {
      const size_t w = alphabet.type.width;
      charge_product(limits, n, w, "tokenize");
      s.payload.resize(n * w);
      for (size_t i = 0; i < n; ++i) {
        uint64_t t = idx.value(i);
        if (t >= k) fail(ErrorCode::Corrupt, "tokenize: index out of range");
        std::copy_n(alphabet.payload.data() + t * w, w, s.payload.data() + i * w);
      }
    }
    return std::vector<Stream>{std::move(s)};
  };
  return e;
}

}  // namespace gp
