// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

// Builtin data-dependent backends.

#pragma once

#include <string>
#include <vector>

#include "engine/graph.hpp"

namespace gp {

/// n >= 2 and at least 90% of the wrapped successive differences are
/// non-negative when read as signed values.
bool mostly_ascending(const Stream& s);
/// At most n/4 distinct elements (n >= 4). Works on any element-typed stream.
bool low_cardinality(const Stream& s);

/// lz>huffman, unconditionally.
GraphPtr generic_backend();
/// empty -> store; mostly ascending -> delta; low cardinality -> tokenize;
/// otherwise transpose>lz>huffman. Non-numeric input takes the generic path.
GraphPtr numeric_backend();
/// empty -> store; low cardinality -> tokenize; otherwise generic.
GraphPtr string_backend();

/// Catalog by name ("generic", "numeric", "string"); nullptr if unknown.
GraphPtr find_selector(std::string_view name);
GraphPtr selector_graph(std::string_view name);
std::vector<std::string> selector_names();

}  // namespace gp
