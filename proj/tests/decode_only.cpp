// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

// Universal decoder check linked against the core library alone: decodes
// every frame listed in <dir>/manifest.txt and compares with the expected
// stream. Exit status 0 when all match.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>

#include "codecs/common.hpp"
#include "format/frame.hpp"

namespace {

gp::Bytes slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  return gp::Bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: gp_decode_only <dir>\n";
    return 2;
  }
  const std::filesystem::path dir = argv[1];
  std::ifstream manifest(dir / "manifest.txt");
  if (!manifest) {
    std::cerr << "gp_decode_only: no manifest in " << dir << "\n";
    return 2;
  }
  size_t total = 0, failed = 0;
  std::string id, type;
  while (manifest >> id >> type) {
    ++total;
    try {
      gp::Stream s = gp::decompress(slurp(dir / (id + ".frame")));
      if (gp::codec_util::type_text(s.type) != type || gp::codec_util::flatten(s) != slurp(dir / (id + ".expected"))) {
        std::cerr << "frame " << id << ": decoded stream differs\n";
        ++failed;
      }
    } catch (const std::exception& e) {
      std::cerr << "frame " << id << ": " << e.what() << "\n";
      ++failed;
    }
  }
  std::cout << "decoded " << total - failed << "/" << total << " frames\n";
  return failed == 0 && total > 0 ? 0 : 1;
}
