// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

#include "engine/graph.hpp"

namespace gp {

uint32_t GraphBuilder::codec(std::string_view name, Bytes params) {
  return codec(registry_->get(name).id, std::move(params));
}

uint32_t GraphBuilder::codec(uint32_t id, Bytes params) {
  const CodecEntry& entry = registry_->get(id);
  CodecSignature sig = entry.signature(params);
  GraphNode n;
  n.kind = GraphNode::Kind::Codec;
  n.codec = entry.spec(std::move(params));
  n.label = entry.name;
  n.input_arity = static_cast<uint32_t>(sig.inputs.size());
  n.successors.resize(sig.outputs.size());
  nodes_.push_back(std::move(n));
  return static_cast<uint32_t>(nodes_.size() - 1);
}

uint32_t GraphBuilder::selector(std::string label, uint32_t input_arity, Selector fn) {
  if (!fn) fail(ErrorCode::Usage, "selector '" + label + "' has no function");
  GraphNode n;
  n.kind = GraphNode::Kind::Function;
  n.label = std::move(label);
  n.input_arity = input_arity;
  n.selector = std::move(fn);
  nodes_.push_back(std::move(n));
  return static_cast<uint32_t>(nodes_.size() - 1);
}

uint32_t GraphBuilder::embed(const Graph& g) {
  const uint32_t base = static_cast<uint32_t>(nodes_.size());
  for (GraphNode n : g.nodes()) {
    for (auto& e : n.successors) {
      if (e) e->node += base;
    }
    nodes_.push_back(std::move(n));
  }
  return base + g.root();
}

void GraphBuilder::connect(uint32_t from, uint32_t output, uint32_t to, uint32_t input) {
  if (from >= nodes_.size() || to >= nodes_.size()) fail(ErrorCode::Usage, "connect: node index out of range");
  GraphNode& src = nodes_[from];
  if (output >= src.successors.size()) {
    fail(ErrorCode::Usage, "connect: " + src.label + " has no output " + std::to_string(output));
  }
  if (src.successors[output]) {
    fail(ErrorCode::Usage, "connect: output " + std::to_string(output) + " of " + src.label + " is already connected");
  }
  if (input >= nodes_[to].input_arity) {
    fail(ErrorCode::Usage, "connect: " + nodes_[to].label + " has no input " + std::to_string(input));
  }
  src.successors[output] = Edge{to, input};
}

GraphPtr GraphBuilder::build(uint32_t root) {
  const size_t n = nodes_.size();
  if (root >= n) fail(ErrorCode::Usage, "graph root out of range");
  std::vector<std::vector<int>> fed(n);
  for (size_t i = 0; i < n; ++i) fed[i].assign(nodes_[i].input_arity, 0);
  std::vector<std::vector<uint32_t>> adj(n);
  for (size_t i = 0; i < n; ++i) {
    for (const auto& e : nodes_[i].successors) {
      if (!e) continue;
      if (++fed[e->node][e->input] > 1) {
        fail(ErrorCode::Usage, "input " + std::to_string(e->input) + " of " + nodes_[e->node].label +
                                   " has more than one producer");
      }
      adj[i].push_back(e->node);
    }
  }
  for (int f : fed[root]) {
    if (f != 0) fail(ErrorCode::Usage, "graph root must not have incoming edges");
  }
  // Cycle check and reachability in one DFS from the root.
  std::vector<uint8_t> state(n, 0);  // 0 unvisited, 1 on stack, 2 done
  std::vector<std::pair<uint32_t, size_t>> stack{{root, 0}};
  state[root] = 1;
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    if (next < adj[v].size()) {
      uint32_t w = adj[v][next++];
      if (state[w] == 1) fail(ErrorCode::Usage, "graph contains a cycle through " + nodes_[w].label);
      if (state[w] == 0) {
        state[w] = 1;
        stack.emplace_back(w, 0);
      }
    } else {
      state[v] = 2;
      stack.pop_back();
    }
  }
  for (size_t i = 0; i < n; ++i) {
    if (state[i] == 0) fail(ErrorCode::Usage, "node " + nodes_[i].label + " is unreachable from the root");
    if (i == root) continue;
    for (size_t j = 0; j < fed[i].size(); ++j) {
      if (fed[i][j] == 0) {
        fail(ErrorCode::Usage, "input " + std::to_string(j) + " of " + nodes_[i].label + " is not connected");
      }
    }
  }
  auto g = std::make_shared<Graph>();
  g->nodes_ = std::move(nodes_);
  g->root_ = root;
  nodes_.clear();
  return g;
}

GraphPtr single(std::string_view codec, Bytes params) {
  GraphBuilder b;
  uint32_t n = b.codec(codec, std::move(params));
  return b.build(n);
}

GraphPtr chain(std::initializer_list<std::string_view> codecs) {
  GraphBuilder b;
  int prev = -1;
  uint32_t first = 0;
  for (std::string_view name : codecs) {
    uint32_t n = b.codec(name);
    if (prev < 0) {
      first = n;
    } else {
      b.connect(static_cast<uint32_t>(prev), 0, n);
    }
    prev = static_cast<int>(n);
  }
  return b.build(first);
}

}  // namespace gp
