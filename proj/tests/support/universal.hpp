// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

// Frames from every profile and from random trainer graphs, written to a
// directory the core-only decoder can check.

#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "codecs/common.hpp"
#include "engine/description.hpp"
#include "engine/engine.hpp"
#include "format/frame.hpp"
#include "profiles/profiles.hpp"
#include "support/corpus.hpp"
#include "support/generators.hpp"
#include "trainer/genome.hpp"

namespace gp::testing {

struct UniversalCase {
  std::string name;
  Bytes frame;
  Stream expected;
};

inline std::vector<UniversalCase> universal_cases(size_t random_graphs = 50) {
  std::vector<UniversalCase> out;
  auto add_file = [&](const std::string& name, const Compressor& c, const Bytes& data) {
    out.push_back({name, c.compress(data), Stream::of_bytes(data)});
  };
  SplitMix64 rng(2026);
  Compressor generic(generic_config()), sao(sao_config()), csv(csv_config());
  add_file("generic_csv", generic, synthetic_csv(1, 200000));
  add_file("generic_sao", generic, synthetic_sao(1, 4000));
  add_file("sao_synthetic", sao, synthetic_sao(2, 8000));
  add_file("sao_header_only", sao, synthetic_sao(3, 0));
  add_file("csv_synthetic", csv, synthetic_csv(4, 300000));
  add_file("csv_fallback", csv, synthetic_sao(5, 100));
  add_file("csv_empty", csv, {});
  for (int i = 0; i < 6; ++i) {
    add_file("generic_random" + std::to_string(i), generic, random_bytes(shape_for(i), rng).payload);
    add_file("sao_random" + std::to_string(i), sao, random_sao_like(shape_for(i), rng));
    add_file("csv_random" + std::to_string(i), csv, random_csv(shape_for(i), rng));
  }
  const MessageType types[] = {MessageType::bytes(), MessageType::numeric(8), MessageType::numeric(4),
                               MessageType::numeric(1), MessageType::structure(6), MessageType::string()};
  for (size_t i = 0; out.size() < 25 + random_graphs; ++i) {
    const MessageType t = types[i % std::size(types)];
    Description genome = random_genome(t, rng);
    Shape shape = shape_for(rng.below(kShapeCount));
    Stream in = t.tag == TypeTag::String ? random_strings(shape, rng) : random_fixed(t.tag, t.width, shape, rng);
    CompressResult r;
    try {
      r = compress(*build_graph(genome), in, 1);
    } catch (const Error&) {
      continue;  // statically typed graphs can still reject particular data
    }
    out.push_back({"graph" + std::to_string(i) + " " + to_text(genome), write_frame(r.trace, r.stored, 1), in});
  }
  return out;
}

/// Writes <i>.frame, <i>.expected (flattened stream) and a manifest of
/// "<i> <type>" lines.
inline void write_universal_cases(const std::filesystem::path& dir, const std::vector<UniversalCase>& cases) {
  std::filesystem::create_directories(dir);
  std::ofstream manifest(dir / "manifest.txt");
  for (size_t i = 0; i < cases.size(); ++i) {
    auto dump = [&](const std::string& ext, const Bytes& b) {
      std::ofstream f(dir / (std::to_string(i) + ext), std::ios::binary);
      f.write(reinterpret_cast<const char*>(b.data()), static_cast<std::streamsize>(b.size()));
    };
    dump(".frame", cases[i].frame);
    dump(".expected", codec_util::flatten(cases[i].expected));
    manifest << i << " " << codec_util::type_text(cases[i].expected.type) << "\n";
  }
}

}  // namespace gp::testing
