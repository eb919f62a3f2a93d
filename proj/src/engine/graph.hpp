// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/registry.hpp"

namespace gp {

class Graph;
using GraphPtr = std::shared_ptr<const Graph>;

/// A selector inspects (never modifies) its inputs and returns the graph to
/// run in its place. The returned graph's root receives the same inputs.
using Selector = std::function<GraphPtr(std::span<const Stream> inputs)>;

struct Edge {
  uint32_t node = 0;
  uint32_t input = 0;
};

struct GraphNode {
  enum class Kind { Codec, Function };

  Kind kind = Kind::Codec;
  CodecSpec codec;
  std::string label;
  uint32_t input_arity = 1;
  std::vector<std::optional<Edge>> successors;  // one slot per codec output
  Selector selector;
};

/// Immutable compile-time compressor network. Node indices are local to the
/// graph; unconnected codec outputs are stored as leaves.
class Graph {
 public:
  const GraphNode& node(uint32_t i) const { return nodes_.at(i); }
  uint32_t root() const { return root_; }
  size_t size() const { return nodes_.size(); }
  const std::vector<GraphNode>& nodes() const { return nodes_; }

 private:
  friend class GraphBuilder;
  std::vector<GraphNode> nodes_;
  uint32_t root_ = 0;
};

class GraphBuilder {
 public:
  explicit GraphBuilder(const CodecRegistry& registry = CodecRegistry::standard()) : registry_(&registry) {}

  uint32_t codec(std::string_view name, Bytes params = {});
  uint32_t codec(uint32_t id, Bytes params = {});
  uint32_t selector(std::string label, uint32_t input_arity, Selector fn);
  /// Copies every node of `g` into this builder; returns the copy of its root.
  uint32_t embed(const Graph& g);

  void connect(uint32_t from, uint32_t output, uint32_t to, uint32_t input = 0);

  /// Validates arity, edge uniqueness, reachability and acyclicity.
  GraphPtr build(uint32_t root);

 private:
  const CodecRegistry* registry_;
  std::vector<GraphNode> nodes_;
};

/// A one-codec graph, e.g. single("store").
GraphPtr single(std::string_view codec, Bytes params = {});
/// A linear chain, e.g. chain({"lz", "huffman"}).
GraphPtr chain(std::initializer_list<std::string_view> codecs);

}  // namespace gp
