// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

// Backend graphs as mutable trees for genetic search.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "engine/description.hpp"
#include "trainer/rng.hpp"

namespace gp {

/// Codecs the search may place in a backend.
const std::vector<std::string>& genome_vocabulary();

/// The fixed starting population, in order.
const std::vector<std::string>& seed_genomes();

struct GenomeLimits {
  size_t max_nodes = 12;
  int max_depth = 6;
};

/// Every codec node gets exactly one child per output ('_' when unused).
Description normalize_genome(Description d, const CodecRegistry& registry = CodecRegistry::standard());
/// Canonical text: trailing '_' children dropped.
std::string genome_text(const Description& d);

/// A codec tree (no selectors) within `limits` whose every edge type-checks
/// for `in`.
bool genome_valid(const Description& d, MessageType in, const GenomeLimits& limits = {});

Description random_genome(MessageType in, SplitMix64& rng, const GenomeLimits& limits = {});

/// Visits each position with probability `rate` and applies one of: insert
/// a node, delete a node, replace a codec, perturb a parameter. Operations
/// that break typing are undone.
Description mutate(const Description& d, MessageType in, SplitMix64& rng, double rate,
                   const GenomeLimits& limits = {});

/// Subtree exchange at positions whose static input types match. Returns the
/// parents unchanged when no valid exchange is found.
std::pair<Description, Description> crossover(const Description& a, const Description& b, MessageType in,
                                              SplitMix64& rng, const GenomeLimits& limits = {});

}  // namespace gp
