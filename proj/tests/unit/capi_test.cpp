// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>
#include <graphpress/graphpress.h>

#include <cstring>
#include <string>
#include <thread>
#include <vector>

namespace {

struct Buffer {
  gp_buffer b{nullptr, 0};
  ~Buffer() { gp_buffer_free(&b); }
  std::string text() const { return std::string(reinterpret_cast<const char*>(b.data), b.size); }
  std::vector<uint8_t> bytes() const { return std::vector<uint8_t>(b.data, b.data + b.size); }
};

struct Compressor {
  gp_compressor* c = nullptr;
  ~Compressor() { gp_compressor_free(c); }
};

std::vector<uint8_t> csv_text(int rows, int seed) {
  std::string s = "id,name,score\n";
  for (int i = 0; i < rows; ++i) {
    s += std::to_string(1000 + i) + ",name" + std::to_string((i * seed) % 17) + "," + std::to_string((i * 37 + seed) % 101) + "\n";
  }
  return std::vector<uint8_t>(s.begin(), s.end());
}

TEST(CApi, Metadata) {
  EXPECT_STRNE(gp_version_string(), "");
  EXPECT_STREQ(gp_status_name(GP_OK), "ok");
  EXPECT_NE(gp_status_name(GP_ERR_CORRUPT), nullptr);
  EXPECT_EQ(gp_min_format_version(), 1u);
  EXPECT_GE(gp_max_format_version(), gp_min_format_version());
}

TEST(CApi, ProfilesRoundTrip) {
  std::vector<uint8_t> data = csv_text(500, 3);
  for (const char* name : {"generic", "sao", "csv"}) {
    Compressor c;
    ASSERT_EQ(gp_compressor_from_profile(name, &c.c), GP_OK) << name;
    Buffer frame, out;
    ASSERT_EQ(gp_compress(c.c, data.data(), data.size(), 0, &frame.b), GP_OK) << gp_last_error();
    size_t consumed = 0;
    ASSERT_EQ(gp_decompress(frame.b.data, frame.b.size, 0, &out.b, &consumed), GP_OK) << gp_last_error();
    EXPECT_EQ(consumed, frame.b.size);
    EXPECT_EQ(out.bytes(), data);
  }
}

TEST(CApi, EmptyInput) {
  Compressor c;
  ASSERT_EQ(gp_compressor_from_profile("generic", &c.c), GP_OK);
  Buffer frame, out;
  ASSERT_EQ(gp_compress(c.c, nullptr, 0, 0, &frame.b), GP_OK);
  ASSERT_EQ(gp_decompress(frame.b.data, frame.b.size, 0, &out.b, nullptr), GP_OK);
  EXPECT_EQ(out.b.size, 0u);
}

TEST(CApi, ErrorsCarryMessages) {
  gp_compressor* c = nullptr;
  EXPECT_EQ(gp_compressor_from_profile("nope", &c), GP_ERR_NOT_FOUND);
  EXPECT_EQ(c, nullptr);
  EXPECT_NE(std::string(gp_last_error()).find("nope"), std::string::npos);
  EXPECT_EQ(gp_compressor_from_profile(nullptr, &c), GP_ERR_USAGE);
  const char bad[] = "graphpress-config 1\nthis is not a config\n";
  EXPECT_EQ(gp_compressor_from_config(bad, sizeof bad - 1, &c), GP_ERR_CONFIG);
  EXPECT_STRNE(gp_last_error(), "");

  const uint8_t junk[] = {'N', 'O', 'P', 'E', 1, 2, 3};
  Buffer out;
  EXPECT_EQ(gp_decompress(junk, sizeof junk, 0, &out.b, nullptr), GP_ERR_FORMAT);
  EXPECT_EQ(out.b.data, nullptr);
  EXPECT_EQ(gp_inspect(junk, sizeof junk, &out.b, nullptr), GP_ERR_FORMAT);
}

TEST(CApi, CorruptionIsDetected) {
  Compressor c;
  ASSERT_EQ(gp_compressor_from_profile("csv", &c.c), GP_OK);
  std::vector<uint8_t> data = csv_text(200, 5);
  Buffer frame;
  ASSERT_EQ(gp_compress(c.c, data.data(), data.size(), 0, &frame.b), GP_OK);
  std::vector<uint8_t> f = frame.bytes();
  f[f.size() / 2] ^= 0x10;
  Buffer out;
  EXPECT_EQ(gp_decompress(f.data(), f.size(), 0, &out.b, nullptr), GP_ERR_CORRUPT);
  EXPECT_EQ(gp_decompress(f.data(), 5, 0, &out.b, nullptr), GP_ERR_CORRUPT);
  EXPECT_NE(std::string(gp_last_error()).find("offset"), std::string::npos);
}

TEST(CApi, OutputLimit) {
  Compressor c;
  ASSERT_EQ(gp_compressor_from_profile("generic", &c.c), GP_OK);
  std::vector<uint8_t> data(100000, 'a');
  Buffer frame, out;
  ASSERT_EQ(gp_compress(c.c, data.data(), data.size(), 0, &frame.b), GP_OK);
  EXPECT_EQ(gp_decompress(frame.b.data, frame.b.size, 1000, &out.b, nullptr), GP_ERR_LIMIT);
}

TEST(CApi, VersionGate) {
  Compressor c;
  ASSERT_EQ(gp_compressor_from_profile("generic", &c.c), GP_OK);
  EXPECT_EQ(gp_compressor_check_version(c.c, gp_min_format_version()), GP_OK);
  EXPECT_EQ(gp_compressor_check_version(c.c, gp_max_format_version() + 1), GP_ERR_VERSION);
  Buffer frame;
  const uint8_t x = 1;
  EXPECT_EQ(gp_compress(c.c, &x, 1, gp_max_format_version() + 1, &frame.b), GP_ERR_VERSION);
  for (unsigned v = gp_min_format_version(); v <= gp_max_format_version(); ++v) {
    Buffer f, out;
    ASSERT_EQ(gp_compress(c.c, &x, 1, v, &f.b), GP_OK);
    ASSERT_EQ(gp_decompress(f.b.data, f.b.size, 0, &out.b, nullptr), GP_OK);
    EXPECT_EQ(out.bytes(), std::vector<uint8_t>{1});
  }
}

TEST(CApi, ConfigTextRoundTrips) {
  Compressor a;
  ASSERT_EQ(gp_compressor_from_csv(';', '"', 1, &a.c), GP_OK);
  Buffer text;
  ASSERT_EQ(gp_compressor_config(a.c, &text.b), GP_OK);
  Compressor b;
  ASSERT_EQ(gp_compressor_from_config(reinterpret_cast<const char*>(text.b.data), text.b.size, &b.c), GP_OK)
      << gp_last_error();
  Buffer again;
  ASSERT_EQ(gp_compressor_config(b.c, &again.b), GP_OK);
  EXPECT_EQ(text.text(), again.text());
  EXPECT_EQ(gp_compressor_format_version(a.c), gp_compressor_format_version(b.c));
}

TEST(CApi, ConcatenatedFramesAndInspect) {
  Compressor c;
  ASSERT_EQ(gp_compressor_from_profile("generic", &c.c), GP_OK);
  std::vector<uint8_t> stream;
  for (int i = 0; i < 3; ++i) {
    std::vector<uint8_t> d = csv_text(10 + i, i);
    Buffer f;
    ASSERT_EQ(gp_compress(c.c, d.data(), d.size(), 0, &f.b), GP_OK);
    stream.insert(stream.end(), f.b.data, f.b.data + f.b.size);
  }
  size_t offset = 0;
  for (int i = 0; i < 3; ++i) {
    Buffer out, info;
    size_t consumed = 0, inspected = 0;
    ASSERT_EQ(gp_decompress(stream.data() + offset, stream.size() - offset, 0, &out.b, &consumed), GP_OK);
    EXPECT_EQ(out.bytes(), csv_text(10 + i, i));
    ASSERT_EQ(gp_inspect(stream.data() + offset, stream.size() - offset, &info.b, &inspected), GP_OK);
    EXPECT_EQ(inspected, consumed);
    EXPECT_FALSE(info.text().empty());
    offset += consumed;
  }
  EXPECT_EQ(offset, stream.size());
}

TEST(CApi, SharedHandleAcrossThreads) {
  Compressor c;
  ASSERT_EQ(gp_compressor_from_profile("csv", &c.c), GP_OK);
  std::vector<uint8_t> data = csv_text(300, 7);
  Buffer reference;
  ASSERT_EQ(gp_compress(c.c, data.data(), data.size(), 0, &reference.b), GP_OK);
  std::vector<int> same(4, 0);
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] {
      Buffer f;
      same[t] = gp_compress(c.c, data.data(), data.size(), 0, &f.b) == GP_OK && f.bytes() == reference.bytes();
    });
  }
  for (auto& t : threads) t.join();
  for (int s : same) EXPECT_TRUE(s);
}

TEST(CApi, Train) {
  Compressor base;
  ASSERT_EQ(gp_compressor_from_profile("csv", &base.c), GP_OK);
  std::vector<std::vector<uint8_t>> files;
  for (int i = 0; i < 3; ++i) files.push_back(csv_text(2000, i + 2));
  std::vector<gp_buffer> samples;
  for (auto& f : files) samples.push_back(gp_buffer{f.data(), f.size()});
  gp_train_options o;
  gp_train_options_default(&o);
  o.population = 6;
  o.generations = 1;
  o.eval_bytes = 16 << 10;
  gp_train_result* r = nullptr;
  ASSERT_EQ(gp_train(base.c, samples.data(), samples.size(), &o, &r), GP_OK) << gp_last_error();
  ASSERT_GE(gp_train_result_count(r), 1u);
  for (size_t i = 0; i < gp_train_result_count(r); ++i) {
    Buffer text;
    ASSERT_EQ(gp_train_result_config(r, i, &text.b), GP_OK);
    Compressor t;
    ASSERT_EQ(gp_compressor_from_config(reinterpret_cast<const char*>(text.b.data), text.b.size, &t.c), GP_OK);
    Buffer frame, out;
    ASSERT_EQ(gp_compress(t.c, files[0].data(), files[0].size(), 0, &frame.b), GP_OK);
    ASSERT_EQ(gp_decompress(frame.b.data, frame.b.size, 0, &out.b, nullptr), GP_OK);
    EXPECT_EQ(out.bytes(), files[0]);
  }
  Buffer report;
  ASSERT_EQ(gp_train_result_report(r, &report.b), GP_OK);
  EXPECT_FALSE(report.text().empty());
  EXPECT_EQ(gp_train_result_warning(r, gp_train_result_warning_count(r)), nullptr);
  Buffer none;
  EXPECT_EQ(gp_train_result_config(r, gp_train_result_count(r), &none.b), GP_ERR_USAGE);
  gp_train_result_free(r);

  EXPECT_EQ(gp_train(base.c, nullptr, 0, &o, &r), GP_ERR_USAGE);
}

}  // namespace
