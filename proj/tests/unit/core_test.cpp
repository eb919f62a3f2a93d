// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "core/error.hpp"
#include "core/registry.hpp"
#include "core/types.hpp"
#include "trainer/rng.hpp"

namespace gp {
namespace {

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::Internal;
}

TEST(Varint, KnownEncodings) {
  Bytes out;
  append_varint(out, 0);
  append_varint(out, 127);
  append_varint(out, 128);
  append_varint(out, 300);
  EXPECT_EQ(out, (Bytes{0x00, 0x7F, 0x80, 0x01, 0xAC, 0x02}));
  EXPECT_EQ(varint_size(UINT64_MAX), 10u);
}

TEST(Varint, RoundTripsRandomValues) {
  SplitMix64 rng(7);
  for (int i = 0; i < 10000; ++i) {
    uint64_t v = rng.next() >> rng.below(64);
    Bytes out;
    append_varint(out, v);
    EXPECT_EQ(out.size(), varint_size(v));
    ByteReader in(out);
    EXPECT_EQ(in.varint(), v);
    EXPECT_TRUE(in.at_end());
  }
}

TEST(Varint, RejectsOverflowAndTruncation) {
  Bytes eleven(10, 0x80);
  eleven.push_back(0x00);
  ByteReader a(eleven);
  EXPECT_EQ(code_of([&] { a.varint(); }), ErrorCode::Corrupt);

  Bytes big(9, 0xFF);
  big.push_back(0x02);  // bit 64 set
  ByteReader b(big);
  EXPECT_EQ(code_of([&] { b.varint(); }), ErrorCode::Corrupt);

  Bytes max(9, 0xFF);
  max.push_back(0x01);
  ByteReader c(max);
  EXPECT_EQ(c.varint(), UINT64_MAX);

  Bytes cut{0x80, 0x80};
  ByteReader d(cut, 100);
  try {
    d.varint();
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("offset 100"), std::string::npos);
  }
}

TEST(ByteReader, BoundsAreChecked) {
  Bytes data{1, 2, 3};
  ByteReader in(data, 10);
  EXPECT_EQ(in.le(2), 0x0201u);
  try {
    in.take(2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Corrupt);
    EXPECT_NE(std::string(e.what()).find("offset 12"), std::string::npos);
  }
}

TEST(Types, ValidityRules) {
  EXPECT_TRUE(MessageType::bytes().valid());
  EXPECT_TRUE(MessageType::string().valid());
  EXPECT_TRUE(MessageType::structure(1).valid());
  EXPECT_FALSE(MessageType::structure(0).valid());
  for (uint32_t w : {1u, 2u, 4u, 8u}) EXPECT_TRUE(MessageType::numeric(w).valid());
  for (uint32_t w : {0u, 3u, 5u, 16u}) EXPECT_FALSE(MessageType::numeric(w).valid());
  EXPECT_EQ(MessageType::numeric(4).to_string(), "numeric(4)");
}

TEST(Types, TypeDescriptorRoundTrip) {
  for (MessageType t : {MessageType::bytes(), MessageType::string(), MessageType::structure(300),
                        MessageType::numeric(8)}) {
    Bytes b;
    append_type(b, t);
    ByteReader in(b);
    EXPECT_EQ(read_type(in), t);
  }
  Bytes bad{7};
  ByteReader in(bad);
  EXPECT_EQ(code_of([&] { read_type(in); }), ErrorCode::Corrupt);
}

TEST(Stream, Validation) {
  EXPECT_FALSE(validate_stream(Stream::of_struct(3, Bytes(9))).has_value());
  EXPECT_TRUE(validate_stream(Stream::of_struct(3, Bytes(8))).has_value());
  EXPECT_TRUE(validate_stream(Stream::of_numeric(3, Bytes(9))).has_value());
  Stream s = Stream::of_strings({"ab", "", "cde"});
  EXPECT_FALSE(validate_stream(s).has_value());
  EXPECT_EQ(s.element_count(), 3u);
  EXPECT_EQ(s.strings(), (std::vector<std::string>{"ab", "", "cde"}));
  s.lengths[2] = 4;
  EXPECT_TRUE(validate_stream(s).has_value());
  Stream b = Stream::of_bytes({1, 2});
  b.lengths = {2};
  EXPECT_TRUE(validate_stream(b).has_value());
  EXPECT_EQ(code_of([&] { require_valid(b, "test"); }), ErrorCode::Type);
}

TEST(Stream, NumericValuesAreLittleEndian) {
  Stream s = Stream::of_values<uint64_t>(2, {1, 0x0203, 0xFFFF});
  EXPECT_EQ(s.payload, (Bytes{1, 0, 3, 2, 0xFF, 0xFF}));
  EXPECT_EQ(s.values(), (std::vector<uint64_t>{1, 0x0203, 0xFFFF}));
}

TEST(Registry, StandardIdsAreFrozen) {
  const CodecRegistry& r = CodecRegistry::standard();
  const char* names[] = {"store", "delta",    "transpose",   "tokenize", "rle",    "mtf",
                         "bitpack", "huffman", "lz", "field_split", "concat", "interpret"};
  for (uint32_t id = 0; id < 12; ++id) {
    ASSERT_NE(r.find(id), nullptr) << id;
    EXPECT_EQ(r.get(id).name, names[id]);
    EXPECT_EQ(r.get(names[id]).id, id);
    EXPECT_EQ(r.get(id).min_format_version, 1u);
  }
  EXPECT_EQ(r.ids().size(), 12u);
  EXPECT_EQ(r.find(12), nullptr);
  EXPECT_EQ(r.find("zstd"), nullptr);
  EXPECT_EQ(code_of([&] { r.get("zstd"); }), ErrorCode::NotFound);
}

TEST(Registry, DuplicateRegistrationFails) {
  CodecRegistry r;
  register_standard_codecs(r);
  CodecEntry dup = r.get("store");
  EXPECT_EQ(code_of([&] { r.register_codec(dup); }), ErrorCode::Usage);
  dup.id = 40;
  EXPECT_EQ(code_of([&] { r.register_codec(dup); }), ErrorCode::Usage);
}

TEST(Registry, VersionCheckIsMinimumBound) {
  CodecSpec spec{12, {}, 2};
  EXPECT_FALSE(check_version(spec, 1));
  EXPECT_TRUE(check_version(spec, 2));
  EXPECT_TRUE(check_version(spec, 3));
  EXPECT_TRUE(check_version(CodecSpec{0, {}, 1}, 1));
}

TEST(TypeConstraint, Accepts) {
  TypeConstraint c = TypeConstraint::of({TypeTag::Numeric}, 4);
  EXPECT_TRUE(c.accepts(MessageType::numeric(4)));
  EXPECT_FALSE(c.accepts(MessageType::numeric(8)));
  EXPECT_FALSE(c.accepts(MessageType::structure(4)));
  EXPECT_TRUE(TypeConstraint::any().accepts(MessageType::string()));
}

TEST(Errors, CodeNames) {
  EXPECT_STREQ(error_code_name(ErrorCode::Corrupt), "corrupt");
  EXPECT_STREQ(error_code_name(ErrorCode::Version), "version");
}

TEST(SplitMix64, ReferenceSequence) {
  SplitMix64 rng(0);
  EXPECT_EQ(rng.next(), 0xE220A8397B1DCDAFull);
  EXPECT_EQ(rng.next(), 0x6E789E6AA1B965F4ull);
}

}  // namespace
}  // namespace gp
