// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

#include "trainer/genome.hpp"

#include <algorithm>

namespace gp {

namespace {

constexpr uint64_t kLzDepths[] = {1, 4, 16, 64, 256};

struct Position {
  Description* node;
  Description* parent;  // nullptr at the root
  MessageType type;     // static type flowing into this position
  int depth;
};

void collect(Description& d, Description* parent, MessageType type, int depth, std::vector<Position>& out) {
  out.push_back({&d, parent, type, depth});
  if (d.is_leaf()) return;
  std::vector<MessageType> outs = output_types(d, type);
  for (size_t j = 0; j < d.children.size() && j < outs.size(); ++j) {
    collect(d.children[j], &d, outs[j], depth + 1, out);
  }
}

std::vector<Position> positions(Description& d, MessageType in) {
  std::vector<Position> out;
  collect(d, nullptr, in, 0, out);
  return out;
}

int tree_depth(const Description& d) {
  int best = 0;
  for (const Description& c : d.children) best = std::max(best, tree_depth(c));
  return best + (d.is_leaf() ? 0 : 1);
}

bool accepts(const std::string& name, MessageType t) {
  const CodecEntry& e = CodecRegistry::standard().get(name);
  return e.signature({}).inputs[0].accepts(t);
}

size_t output_count(const std::string& name) { return CodecRegistry::standard().get(name).signature({}).outputs.size(); }

Description leaf() { return Description{"_", "", {}}; }

Description codec_node(const std::string& name, SplitMix64& rng) {
  Description d{name, "", {}};
  if (name == "lz") {
    uint64_t depth = kLzDepths[rng.below(std::size(kLzDepths))];
    const CodecEntry& e = CodecRegistry::standard().get("lz");
    d.params = e.params_to_text(e.params_from_text("depth=" + std::to_string(depth)));
  }
  d.children.assign(output_count(name), leaf());
  return d;
}

const std::string* pick_codec(MessageType t, SplitMix64& rng, bool need_single_output = false) {
  std::vector<const std::string*> options;
  for (const std::string& name : genome_vocabulary()) {
    if (accepts(name, t) && (!need_single_output || output_count(name) == 1)) options.push_back(&name);
  }
  if (options.empty()) return nullptr;
  return options[rng.below(options.size())];
}

Description grow(MessageType t, SplitMix64& rng, int depth_left) {
  const std::string* name = pick_codec(t, rng);
  if (name == nullptr) return leaf();
  Description d = codec_node(*name, rng);
  std::vector<MessageType> outs = output_types(d, t);
  for (size_t j = 0; j < d.children.size(); ++j) {
    if (depth_left > 1 && rng.chance(0.5)) d.children[j] = grow(outs[j], rng, depth_left - 1);
  }
  return d;
}

}  // namespace

const std::vector<std::string>& genome_vocabulary() {
  static const std::vector<std::string> v = {"store", "delta", "transpose", "tokenize", "rle",
                                             "mtf",   "bitpack", "huffman", "lz"};
  return v;
}

const std::vector<std::string>& seed_genomes() {
  static const std::vector<std::string> v = {
      "store",
      "lz>huffman",
      "huffman",
      "delta>lz>huffman",
      "tokenize{lz>huffman,huffman}",
      "transpose>lz>huffman",
      "rle{lz>huffman,lz>huffman}",
  };
  return v;
}

Description normalize_genome(Description d, const CodecRegistry& registry) {
  if (d.is_leaf() || d.is_selector()) return d;
  const size_t outs = registry.get(d.name).signature(description_params(d, registry)).outputs.size();
  if (d.children.size() < outs) d.children.resize(outs, leaf());
  for (Description& c : d.children) c = normalize_genome(std::move(c), registry);
  return d;
}

static Description trimmed(Description d) {
  while (!d.children.empty() && d.children.back().is_leaf()) d.children.pop_back();
  for (Description& c : d.children) c = trimmed(std::move(c));
  return d;
}

std::string genome_text(const Description& d) { return to_text(trimmed(d)); }

bool genome_valid(const Description& d, MessageType in, const GenomeLimits& limits) {
  if (d.is_leaf() || d.is_selector()) return false;
  if (node_count(d) > limits.max_nodes || tree_depth(d) > limits.max_depth) return false;
  try {
    return !check_types(d, in).has_value();
  } catch (const Error&) {
    return false;
  }
}

Description random_genome(MessageType in, SplitMix64& rng, const GenomeLimits& limits) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Description d = grow(in, rng, std::min(limits.max_depth, 4));
    if (genome_valid(d, in, limits)) return d;
  }
  return normalize_genome(parse_description("store"));
}

Description mutate(const Description& d, MessageType in, SplitMix64& rng, double rate, const GenomeLimits& limits) {
  Description g = normalize_genome(d);
  const size_t visits = positions(g, in).size();
  for (size_t i = 0; i < visits; ++i) {
    if (!rng.chance(rate)) continue;
    Description before = g;
    std::vector<Position> pos = positions(g, in);
    if (i >= pos.size()) break;
    Position p = pos[i];
    switch (rng.below(4)) {
      case 0: {  // insert a node above this position
        const std::string* name = pick_codec(p.type, rng);
        if (name == nullptr) break;
        Description n = codec_node(*name, rng);
        n.children[0] = std::move(*p.node);
        *p.node = std::move(n);
        break;
      }
      case 1: {  // delete this node, splicing in its first child
        if (p.node->is_leaf()) break;
        Description child = p.node->children.empty() ? leaf() : p.node->children[0];
        if (child.is_leaf() && p.parent == nullptr) break;
        *p.node = std::move(child);
        break;
      }
      case 2: {  // replace the codec, keeping subtrees that still fit
        const std::string* name = pick_codec(p.type, rng);
        if (name == nullptr) break;
        Description n = codec_node(*name, rng);
        if (!p.node->is_leaf()) {
          for (size_t j = 0; j < n.children.size() && j < p.node->children.size(); ++j) {
            n.children[j] = std::move(p.node->children[j]);
          }
        }
        *p.node = std::move(n);
        break;
      }
      default: {  // perturb a parameter
        if (p.node->name != "lz") break;
        Description n = codec_node("lz", rng);
        n.children = std::move(p.node->children);
        *p.node = std::move(n);
        break;
      }
    }
    g = normalize_genome(std::move(g));
    if (!genome_valid(g, in, limits)) g = std::move(before);
  }
  return g;
}

std::pair<Description, Description> crossover(const Description& a, const Description& b, MessageType in,
                                              SplitMix64& rng, const GenomeLimits& limits) {
  for (int attempt = 0; attempt < 16; ++attempt) {
    Description x = normalize_genome(a);
    Description y = normalize_genome(b);
    std::vector<Position> px = positions(x, in);
    std::vector<Position> py = positions(y, in);
    Position& cx = px[rng.below(px.size())];
    std::vector<size_t> compatible;
    for (size_t k = 0; k < py.size(); ++k) {
      if (py[k].type == cx.type && (!cx.node->is_leaf() || !py[k].node->is_leaf())) compatible.push_back(k);
    }
    if (compatible.empty()) continue;
    Position& cy = py[compatible[rng.below(compatible.size())]];
    std::swap(*cx.node, *cy.node);
    if (genome_valid(x, in, limits) && genome_valid(y, in, limits)) return {std::move(x), std::move(y)};
  }
  return {a, b};
}

}  // namespace gp
