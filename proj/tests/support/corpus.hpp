// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

// Deterministic synthetic inputs shared by the test binaries.

#pragma once

#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "core/bytes.hpp"
#include "trainer/rng.hpp"

namespace gp::testing {

/// CSV with a header, a sorted int64 column, an 8-value enum column and a
/// random 16-digit hex column, about `target_bytes` long. `start` seeds the
/// sorted column so consecutive files continue the sequence.
inline Bytes synthetic_csv(uint64_t seed, size_t target_bytes, int64_t start = 1'600'000'000'000) {
  static const char* kinds[] = {"login", "logout", "view", "click", "purchase", "refund", "search", "share"};
  SplitMix64 rng(seed);
  std::string out = "timestamp,event,session\n";
  int64_t t = start;
  char hex[17];
  while (out.size() < target_bytes) {
    t += static_cast<int64_t>(rng.below(1000));
    std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(rng.next()));
    out += std::to_string(t);
    out += ',';
    out += kinds[rng.below(8)];
    out += ',';
    out += hex;
    out += '\n';
  }
  return Bytes(out.begin(), out.end());
}

/// A file in the SAO star-catalog layout: 28-byte header then `records`
/// 28-byte records (ascending right ascension, declination, a small set of
/// spectral classes and magnitudes, and small proper motions).
inline Bytes synthetic_sao(uint64_t seed, size_t records) {
  SplitMix64 rng(seed);
  Bytes out(28);
  for (auto& b : out) b = static_cast<uint8_t>(rng.next());
  double ra = 0;
  for (size_t r = 0; r < records; ++r) {
    ra += rng.unit() * 2.4e-5;
    double dec = (rng.unit() - 0.5) * 3.1;
    uint16_t spectral = static_cast<uint16_t>(0x4130 + rng.below(4) * 256 + rng.below(10));
    uint16_t mag = static_cast<uint16_t>(400 + rng.below(500));
    uint32_t pm_ra = static_cast<uint32_t>(rng.below(64) * (rng.chance(0.7) ? 0 : 1));
    uint32_t pm_dec = static_cast<uint32_t>(rng.below(128) * (rng.chance(0.6) ? 0 : 1));
    uint8_t rec[28];
    std::memcpy(rec, &ra, 8);
    std::memcpy(rec + 8, &dec, 8);
    std::memcpy(rec + 16, &spectral, 2);
    std::memcpy(rec + 18, &mag, 2);
    std::memcpy(rec + 20, &pm_ra, 4);
    std::memcpy(rec + 24, &pm_dec, 4);
    out.insert(out.end(), rec, rec + 28);
  }
  return out;
}

}  // namespace gp::testing
