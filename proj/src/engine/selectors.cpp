// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

#include "engine/selectors.hpp"

#include <string_view>
#include <unordered_set>

#include "engine/description.hpp"

namespace gp {

namespace {

GraphPtr selector_node(std::string label, Selector fn) {
  GraphBuilder b;
  return b.build(b.selector(std::move(label), 1, std::move(fn)));
}

bool is_empty(const Stream& s) { return s.payload.empty() && s.lengths.empty(); }

}  // namespace

bool mostly_ascending(const Stream& s) {
  if (s.type.tag != TypeTag::Numeric) return false;
  const size_t n = s.element_count();
  if (n < 2) return false;
  const unsigned bits = 8 * s.type.width;
  const uint64_t sign = uint64_t{1} << (bits - 1);
  const uint64_t mask = bits == 64 ? ~uint64_t{0} : (uint64_t{1} << bits) - 1;
  size_t non_negative = 0;
  uint64_t prev = s.value(0);
  for (size_t i = 1; i < n; ++i) {
    uint64_t v = s.value(i);
    if (((v - prev) & mask & sign) == 0) ++non_negative;
    prev = v;
  }
  return non_negative * 10 >= (n - 1) * 9;
}

bool low_cardinality(const Stream& s) {
  if (s.type.tag == TypeTag::Bytes) return false;
  const size_t n = s.element_count();
  if (n < 4) return false;
  const size_t limit = n / 4;
  std::unordered_set<std::string_view> seen;
  for (size_t i = 0; i < n; ++i) {
    ByteView e = s.element(i);
    seen.emplace(reinterpret_cast<const char*>(e.data()), e.size());
    if (seen.size() > limit) return false;
  }
  return true;
}

GraphPtr generic_backend() {
  static const GraphPtr g = build_graph("lz>huffman");
  return g;
}

GraphPtr numeric_backend() {
  static const GraphPtr g = selector_node("numeric", [](std::span<const Stream> in) -> GraphPtr {
    static const GraphPtr store = build_graph("store");
    static const GraphPtr delta_wide = build_graph("delta>transpose>lz>huffman");
    static const GraphPtr delta_byte = build_graph("delta>lz>huffman");
    static const GraphPtr tokens = build_graph("tokenize{transpose>lz>huffman,huffman}");
    static const GraphPtr planes = build_graph("transpose>lz>huffman");
    const Stream& s = in[0];
    if (is_empty(s)) return store;
    if (s.type.tag != TypeTag::Numeric) return generic_backend();
    if (mostly_ascending(s)) return s.type.width == 1 ? delta_byte : delta_wide;
    if (low_cardinality(s)) return tokens;
    return planes;
  });
  return g;
}

GraphPtr string_backend() {
  static const GraphPtr g = selector_node("string", [](std::span<const Stream> in) -> GraphPtr {
    static const GraphPtr store = build_graph("store");
    static const GraphPtr tokens = build_graph("tokenize{lz>huffman,huffman}");
    const Stream& s = in[0];
    if (is_empty(s)) return store;
    if (low_cardinality(s)) return tokens;
    return generic_backend();
  });
  return g;
}

GraphPtr find_selector(std::string_view name) {
  if (name == "generic") return generic_backend();
  if (name == "numeric") return numeric_backend();
  if (name == "string") return string_backend();
  return nullptr;
}

GraphPtr selector_graph(std::string_view name) {
  if (GraphPtr g = find_selector(name)) return g;
  fail(ErrorCode::NotFound, "unknown selector '@" + std::string(name) + "'");
}

std::vector<std::string> selector_names() { return {"generic", "numeric", "string"}; }

}  // namespace gp
