// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

// Randomized checks of the library-wide invariants.

#include <gtest/gtest.h>

#include "codecs/kernels.hpp"
#include "engine/description.hpp"
#include "engine/engine.hpp"
#include "format/frame.hpp"
#include "profiles/profiles.hpp"
#include "support/corpus.hpp"
#include "support/generators.hpp"
#include "trainer/genome.hpp"
#include "trainer/pareto.hpp"
#include "trainer/trainer.hpp"

namespace gp {
namespace {

const CodecRegistry& reg() { return CodecRegistry::standard(); }

TEST(Property, VersionCheckIsMonotone) {
  for (uint32_t min = 1; min <= 6; ++min) {
    CodecSpec spec{0, {}, min};
    bool allowed = false;
    for (uint32_t v = 0; v <= 12; ++v) {
      bool now = check_version(spec, v);
      EXPECT_TRUE(!allowed || now) << min << " " << v;
      allowed = now;
    }
  }
}

TEST(Property, MisdeclaredOutputsAreInternalErrors) {
  CodecRegistry r;
  register_standard_codecs(r);
  CodecEntry liar = r.get("store");
  liar.id = 20;
  liar.name = "liar";
  liar.encode = [](ByteView, std::span<const Stream> in) {
    EncodeResult e;
    e.outputs.push_back(in[0]);  // declared bytes, returns the input type
    return e;
  };
  r.register_codec(liar);
  GraphBuilder b(r);
  GraphPtr g = b.build(b.codec("liar"));
  try {
    compress(*g, Stream::of_numeric(4, Bytes(8)), 1, r);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Internal);
  }
}

void check_tokenize(const Stream& in) {
  EncodeResult r = reg().get("tokenize").encode({}, std::span<const Stream>(&in, 1));
  const Stream& alphabet = r.outputs[0];
  const Stream& index = r.outputs[1];
  const size_t n = in.element_count();
  ASSERT_LE(alphabet.element_count(), n);
  ASSERT_EQ(index.element_count(), n);
  for (size_t i = 0; i < n; ++i) {
    ByteView expect = in.element(i);
    ByteView got = alphabet.element(index.value(i));
    ASSERT_TRUE(std::equal(expect.begin(), expect.end(), got.begin(), got.end()));
  }
  for (size_t a = 0; a < alphabet.element_count(); ++a) {
    for (size_t b = a + 1; b < alphabet.element_count(); ++b) {
      ByteView x = alphabet.element(a), y = alphabet.element(b);
      ASSERT_FALSE(std::equal(x.begin(), x.end(), y.begin(), y.end()));
    }
  }
}

TEST(Property, TokenizeMatchesNaiveReconstruction) {
  // Every sequence of length <= 6 over a 4-symbol alphabet.
  for (size_t len = 0; len <= 6; ++len) {
    size_t total = size_t{1} << (2 * len);
    for (size_t code = 0; code < total; ++code) {
      std::vector<uint64_t> v(len);
      for (size_t i = 0; i < len; ++i) v[i] = (code >> (2 * i)) & 3;
      check_tokenize(Stream::of_values(1, v));
    }
  }
  SplitMix64 rng(71);
  for (int i = 0; i < 2000; ++i) {
    std::vector<std::string> items(rng.below(65));
    for (auto& s : items) s = std::string(1 + rng.below(2), static_cast<char>('a' + rng.below(2)));
    check_tokenize(Stream::of_strings(items));
  }
}

TEST(Property, DeltaWrapsAroundEveryWidth) {
  const CodecEntry& delta = reg().get("delta");
  for (uint32_t w : {1u, 2u, 4u, 8u}) {
    const uint64_t top = w == 8 ? UINT64_MAX : (uint64_t{1} << (8 * w)) - 1;
    Stream in = Stream::of_values<uint64_t>(w, {top, 0, top - 1, 1, top, top, 0});
    EncodeResult r = delta.encode({}, std::span<const Stream>(&in, 1));
    EXPECT_EQ(delta.decode(r.wire_params, r.outputs, {})[0], in) << w;
  }
}

TEST(Property, LzExpansionIsBounded) {
  SplitMix64 rng(72);
  const CodecEntry& lz = reg().get("lz");
  for (size_t n : {0, 1, 15, 16, 17, 1000, 65536, 300000}) {
    Bytes data(n);
    for (auto& b : data) b = static_cast<uint8_t>(rng.next());
    Stream in = Stream::of_bytes(data);
    EncodeResult r = lz.encode({}, std::span<const Stream>(&in, 1));
    EXPECT_LE(r.outputs[0].payload.size(), kernels::lz_bound(n)) << n;
  }
}

TEST(Property, EncodersAreDeterministic) {
  SplitMix64 rng(73);
  for (uint32_t id : reg().ids()) {
    const CodecEntry& e = reg().get(id);
    for (uint64_t i = 0; i < 30; ++i) {
      testing::CodecCase c = testing::random_codec_case(e, i, rng);
      EncodeResult a = e.encode(c.params, c.inputs);
      EncodeResult b = e.encode(c.params, c.inputs);
      EXPECT_EQ(a.outputs, b.outputs);
      EXPECT_EQ(a.wire_params, b.wire_params);
    }
  }
}

// Random trainer graphs over random data: lossless, selector-free, replayable
// and deterministic.
TEST(Property, RandomGraphsRoundTrip) {
  const MessageType types[] = {MessageType::bytes(), MessageType::numeric(8), MessageType::numeric(2),
                               MessageType::numeric(1), MessageType::structure(3), MessageType::structure(12),
                               MessageType::string()};
  SplitMix64 rng(74);
  size_t ran = 0;
  for (int i = 0; i < 700; ++i) {
    const MessageType t = types[i % std::size(types)];
    Description genome = random_genome(t, rng);
    testing::Shape shape = testing::shape_for(rng.below(testing::kShapeCount));
    Stream in = t.tag == TypeTag::String ? testing::random_strings(shape, rng)
                                         : testing::random_fixed(t.tag, t.width, shape, rng);
    GraphPtr g = build_graph(genome);
    CompressResult r;
    try {
      r = compress(*g, in, 1);
    } catch (const Error& e) {
      ASSERT_TRUE(e.code() == ErrorCode::Type || e.code() == ErrorCode::Param) << to_text(genome) << ": " << e.what();
      continue;
    }
    ++ran;
    validate_trace(r.trace);
    for (const Instruction& ins : r.trace.instructions) ASSERT_NE(reg().find(ins.codec_id), nullptr);
    ASSERT_EQ(decompress_trace(r.trace, r.stored), in) << to_text(genome);
    CompressResult again = compress(*g, in, 1);
    ASSERT_EQ(again.trace, r.trace);
    ASSERT_EQ(again.stored, r.stored);
  }
  EXPECT_GT(ran, 600u);
}

TEST(Property, FramesDecodeAtEverySupportedVersion) {
  Stream in = Stream::of_bytes(testing::synthetic_csv(1, 5000));
  CompressResult r = compress(*build_graph("@generic"), in, 1);
  for (uint32_t v = kMinFormatVersion; v <= kMaxFormatVersion; ++v) {
    EXPECT_EQ(decompress(write_frame(r.trace, r.stored, v)), in);
  }
  EXPECT_THROW(write_frame(r.trace, r.stored, kMaxFormatVersion + 1), Error);
}

TEST(Property, ParsersAreInvertible) {
  SplitMix64 rng(75);
  size_t sao = 0, csv = 0;
  for (uint64_t i = 0; i < 600; ++i) {
    testing::Shape shape = testing::shape_for(i);
    Bytes s = testing::random_sao_like(shape, rng);
    try {
      EXPECT_EQ(sao_unparse(sao_parse(Stream::of_bytes(s))).payload, s);
      ++sao;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::Format);
    }
    Bytes c = testing::random_csv(shape, rng);
    CsvOptions options;
    options.delimiter = c.size() > 3 && std::count(c.begin(), c.end(), ';') > std::count(c.begin(), c.end(), ',') ? ';' : ',';
    options.header = rng.chance(0.5);
    if (auto parsed = csv_parse(Stream::of_bytes(c), options)) {
      EXPECT_EQ(csv_unparse(*parsed).payload, c) << std::string(c.begin(), c.end());
      ++csv;
    }
  }
  EXPECT_GT(sao, 400u);
  EXPECT_GT(csv, 300u);
}

TEST(Property, EvolvedFrontsAreNotDominatedBySeeds) {
  SplitMix64 rng(76);
  std::vector<Stream> samples;
  for (int i = 0; i < 2; ++i) samples.push_back(testing::random_strings(testing::Shape::LowCardinality, rng));
  EvolveOptions o;
  o.population = 10;
  o.generations = 3;
  auto front = evolve_backend(samples, o);
  FitnessEvaluator f(samples);
  for (const std::string& seed : seed_genomes()) {
    Objectives s = f.evaluate(seed);
    for (const auto& p : front) EXPECT_FALSE(dominates(s, p.objectives)) << seed << " dominates " << p.genome;
  }
}

TEST(Property, TrainingNeverLosesToUntrainedOnTrainingSet) {
  std::vector<Bytes> files;
  for (int i = 0; i < 3; ++i) files.push_back(testing::synthetic_csv(300 + i, 50000, i * 1'000'000));
  TrainOptions o;
  o.evolve.population = 8;
  o.evolve.generations = 2;
  o.evolve.eval_bytes = 32 << 10;
  TrainResult r = train(files, csv_config(), o);
  Compressor untrained(csv_config());
  uint64_t baseline = 0;
  for (size_t i = 0; i < r.training_samples; ++i) baseline += untrained.compress(files[i]).size();
  uint64_t best = UINT64_MAX;
  for (const auto& c : r.configs) best = std::min(best, c.training_bytes);
  EXPECT_LE(best, baseline);
}

}  // namespace
}  // namespace gp
