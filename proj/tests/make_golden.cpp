// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

// Regenerates the frozen frame vectors in tests/data. Run only when the wire
// format changes on purpose.

#include <fstream>
#include <iostream>

#include "engine/description.hpp"
#include "engine/engine.hpp"
#include "format/frame.hpp"
#include "profiles/profiles.hpp"
#include "support/corpus.hpp"
#include "support/hex.hpp"

using namespace gp;

namespace {

void write(const std::string& dir, const std::string& name, const std::string& comment, const Bytes& frame) {
  std::ofstream out(dir + "/" + name);
  out << "# " << comment << "\n" << testing::to_hex(frame);
  std::cout << name << ": " << frame.size() << " bytes\n";
}

Bytes frame_of(const Graph& g, const Stream& in) {
  CompressResult r = compress(g, in, 1);
  return write_frame(r.trace, r.stored, 1);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: gp_make_golden <tests/data dir>\n";
    return 1;
  }
  const std::string dir = argv[1];
  write(dir, "store_empty.hex", "store graph on empty input", frame_of(*single("store"), Stream::of_bytes({})));
  write(dir, "tokenize_split.hex", "tokenize{huffman,lz} on alice,bob,bob,eve,alice,bob,alice",
        frame_of(*build_graph("tokenize{huffman,lz}"),
                 Stream::of_strings({"alice", "bob", "bob", "eve", "alice", "bob", "alice"})));
  write(dir, "sao_small.hex", "sao profile on synthetic_sao(7, 16)",
        Compressor(sao_config()).compress(testing::synthetic_sao(7, 16)));
  return 0;
}
