// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "support/universal.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: gp_make_frames <dir>\n";
    return 2;
  }
  try {
    auto cases = gp::testing::universal_cases();
    gp::testing::write_universal_cases(argv[1], cases);
    std::cout << "wrote " << cases.size() << " frames to " << argv[1] << "\n";
  } catch (const std::exception& e) {
    std::cerr << "gp_make_frames: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
