// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

// Text form of backend graphs, shared by configs, selectors and the trainer.
//
//   node     := name [ '(' key '=' value { ',' key '=' value } ')' ] [ next ]
//   next     := '>' node | '{' node { ',' node } '}'
//   name     := codec name | '_' | '@' selector name
//
// `a>b` feeds output 0 of `a` into `b`; `a{x,y}` feeds output i into child i.
// `_` leaves an output unconnected so it is stored as is.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "engine/graph.hpp"

namespace gp {

struct Description {
  std::string name;    // codec name, "_" or "@selector"
  std::string params;  // canonical "k=v,..." text, empty if none
  std::vector<Description> children;

  bool is_leaf() const { return name == "_"; }
  bool is_selector() const { return !name.empty() && name[0] == '@'; }

  friend bool operator==(const Description&, const Description&) = default;
};

/// Parses and canonicalizes (params re-rendered through the codec). Errors
/// are Config errors naming the character offset.
Description parse_description(std::string_view text, const CodecRegistry& registry = CodecRegistry::standard());
std::string to_text(const Description& d);

/// Binary params of a codec node.
Bytes description_params(const Description& d, const CodecRegistry& registry = CodecRegistry::standard());

/// Number of codec/selector nodes (leaves excluded).
size_t node_count(const Description& d);

GraphPtr build_graph(const Description& d, const CodecRegistry& registry = CodecRegistry::standard());
GraphPtr build_graph(std::string_view text, const CodecRegistry& registry = CodecRegistry::standard());

/// Static output types of a codec node for input `in`. A fixed-width tag with
/// width 0 means the width depends on the data.
std::vector<MessageType> output_types(const Description& d, MessageType in,
                                      const CodecRegistry& registry = CodecRegistry::standard());

/// Static type check for input type `in`. Returns the first problem, or
/// nullopt when every edge is statically admissible. Widths that depend on
/// data (e.g. tokenize index width) are treated as unknown; an unknown width
/// fails any width-specific constraint.
std::optional<std::string> check_types(const Description& d, MessageType in,
                                       const CodecRegistry& registry = CodecRegistry::standard());

}  // namespace gp
