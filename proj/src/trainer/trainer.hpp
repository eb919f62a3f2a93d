// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <vector>

#include "profiles/profiles.hpp"
#include "trainer/genome.hpp"
#include "trainer/pareto.hpp"

namespace gp {

struct EvolveOptions {
  size_t population = 32;
  size_t generations = 25;  // rounds of offspring after the initial population
  size_t tournament = 2;
  double mutation_rate = 0.3;  // per node
  double crossover_rate = 0.7;
  uint64_t seed = 1;
  size_t eval_bytes = 256 << 10;  // per fitness evaluation, across all samples
  GenomeLimits limits;
};

/// Deterministic fitness with a cache keyed by canonical genome text.
class FitnessEvaluator {
 public:
  FitnessEvaluator(std::vector<Stream> samples, const CodecRegistry& registry = CodecRegistry::standard());

  /// Summed frame size and codec cost over all samples; infeasible when any
  /// sample fails to compress or to round-trip.
  Objectives evaluate(const std::string& genome);
  MessageType input_type() const { return type_; }
  size_t evaluations() const { return evaluations_; }

 private:
  std::vector<Stream> samples_;
  MessageType type_;
  const CodecRegistry* registry_;
  std::map<std::string, Objectives> cache_;
  size_t evaluations_ = 0;
};

/// First element-aligned prefix of `s` holding at most `max_bytes` bytes.
Stream stream_prefix(const Stream& s, size_t max_bytes);

/// NSGA-II over backend graphs. Returns the non-dominated set of the final
/// population together with the seeds and `extra` genomes (duplicates by
/// genome removed, infeasible points dropped).
std::vector<ParetoPoint> evolve_backend(const std::vector<Stream>& samples, const EvolveOptions& options,
                                        const std::vector<std::string>& extra = {});

struct ClusterResult {
  std::vector<std::vector<std::string>> clusters;  // ordered by lowest tag index
  std::vector<double> totals;                      // estimated total before and after each merge
};

/// Greedy merging: repeatedly merges the pair with the largest positive
/// saving (ties: lowest tag index) until no merge helps. Streams of
/// different types are never merged. `samples` must share tags and types.
ClusterResult cluster_streams(const std::vector<std::vector<NamedStream>>& samples, const std::string& backend,
                              size_t eval_bytes = 256 << 10);

/// Streams of `tags` per sample, concatenated in tag order.
std::vector<Stream> cluster_samples(const std::vector<std::vector<NamedStream>>& samples,
                                    const std::vector<std::string>& tags);

struct TrainOptions {
  EvolveOptions evolve;
  size_t capacity = 8;
};

struct TrainedConfig {
  CompressorConfig config;
  Objectives objectives{};      // estimated on the training prefixes
  uint64_t training_bytes = 0;  // compressed size of all training samples
  uint64_t held_out_bytes = 0;  // compressed size of held-out samples
};

struct TrainResult {
  std::vector<TrainedConfig> configs;  // smallest estimated size first
  std::vector<std::string> warnings;
  ClusterResult clustering;
  size_t training_samples = 0;
  size_t held_out_samples = 0;
  uint64_t training_original = 0;
  uint64_t held_out_original = 0;

  std::string report() const;
};

/// Parses samples with the base config's parser; nullopt when it does not
/// apply.
std::optional<std::vector<NamedStream>> parse_sample(const CompressorConfig& base, ByteView data);

/// Usage error when no sample survives parsing. The last sample is held out
/// when there are at least three.
TrainResult train(const std::vector<Bytes>& samples, const CompressorConfig& base, const TrainOptions& options = {});

}  // namespace gp
