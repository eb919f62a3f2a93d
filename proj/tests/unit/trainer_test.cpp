// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "engine/description.hpp"
#include "format/frame.hpp"
#include "profiles/profiles.hpp"
#include "support/corpus.hpp"
#include "support/generators.hpp"
#include "trainer/genome.hpp"
#include "trainer/pareto.hpp"
#include "trainer/trainer.hpp"

namespace gp {
namespace {

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::Internal;
}

bool mutually_non_dominated(const std::vector<ParetoPoint>& front) {
  for (const auto& a : front) {
    for (const auto& b : front) {
      if (dominates(a.objectives, b.objectives)) return false;
    }
  }
  return true;
}

TEST(Pareto, Dominance) {
  EXPECT_TRUE(dominates({1, 2, 3}, {1, 2, 4}));
  EXPECT_FALSE(dominates({1, 2, 3}, {1, 2, 3}));
  EXPECT_FALSE(dominates({1, 5, 3}, {2, 2, 3}));
  EXPECT_TRUE(dominates({1, 1, 1}, {kInfeasible, kInfeasible, kInfeasible}));
}

TEST(Pareto, NonDominatedSortRanks) {
  std::vector<Objectives> pts = {{1, 5, 0}, {2, 2, 0}, {5, 1, 0}, {3, 3, 0}, {6, 6, 0}, {2, 2, 0}};
  auto fronts = non_dominated_sort(pts);
  ASSERT_EQ(fronts.size(), 3u);
  EXPECT_EQ(std::set<size_t>(fronts[0].begin(), fronts[0].end()), (std::set<size_t>{0, 1, 2, 5}));
  EXPECT_EQ(fronts[1], (std::vector<size_t>{3}));
  EXPECT_EQ(fronts[2], (std::vector<size_t>{4}));
  EXPECT_EQ(non_dominated(pts).size(), 4u);
}

TEST(Pareto, CrowdingDistancesByHand) {
  // Objective ranges 5 and 4; the third objective is constant and skipped.
  std::vector<Objectives> pts = {{1, 5, 7}, {2, 3, 7}, {4, 2, 7}, {6, 1, 7}};
  auto d = crowding_distances(pts, {0, 1, 2, 3});
  EXPECT_TRUE(std::isinf(d[0]));
  EXPECT_TRUE(std::isinf(d[3]));
  EXPECT_DOUBLE_EQ(d[1], 3.0 / 5 + 3.0 / 4);
  EXPECT_DOUBLE_EQ(d[2], 4.0 / 5 + 2.0 / 4);
}

TEST(Pareto, MergeKeepsExtremesOfColinearFront) {
  std::vector<ParetoPoint> a, b;
  for (int i = 0; i < 10; ++i) {
    ParetoPoint p{"p" + std::to_string(i), {double(i), double(9 - i), 0}, 0};
    (i % 2 ? b : a).push_back(p);
  }
  // Union order is a then b; re-sort into index order to match the oracle.
  std::vector<ParetoPoint> ordered;
  for (int i = 0; i < 10; ++i) ordered.push_back(i % 2 ? b[i / 2] : a[i / 2]);
  auto kept = merge_pareto({ordered}, 3);
  std::vector<std::string> names;
  for (const auto& p : kept) names.push_back(p.genome);
  std::sort(names.begin(), names.end());
  // Removal order from iterated crowding: p1 p3 p5 p7 p8 p2 p6.
  EXPECT_EQ(names, (std::vector<std::string>{"p0", "p4", "p9"}));

  auto two = merge_pareto({a, b}, 3);
  std::set<std::string> two_names;
  for (const auto& p : two) two_names.insert(p.genome);
  EXPECT_TRUE(two_names.count("p0") && two_names.count("p9"));
  EXPECT_EQ(two.size(), 3u);
}

TEST(Pareto, MergeDropsDominatedAndDuplicates) {
  std::vector<ParetoPoint> a = {{"x", {1, 1, 1}, 0}, {"y", {2, 2, 2}, 0}};
  std::vector<ParetoPoint> b = {{"x", {1, 1, 1}, 0}, {"z", {0, 3, 1}, 0}};
  auto kept = merge_pareto({a, b}, 8);
  std::set<std::string> names;
  for (const auto& p : kept) names.insert(p.genome);
  EXPECT_EQ(names, (std::set<std::string>{"x", "z"}));
  EXPECT_TRUE(mutually_non_dominated(kept));
}

TEST(Genome, SeedsAreValidWhereTheyTypeCheck) {
  for (const std::string& s : seed_genomes()) {
    Description d = parse_description(s);
    EXPECT_EQ(genome_text(normalize_genome(d)), to_text(d)) << s;
  }
  EXPECT_TRUE(genome_valid(parse_description("delta>lz>huffman"), MessageType::numeric(8)));
  EXPECT_FALSE(genome_valid(parse_description("delta>lz>huffman"), MessageType::bytes()));
  EXPECT_FALSE(genome_valid(parse_description("@generic"), MessageType::bytes()));
  EXPECT_FALSE(genome_valid(parse_description("huffman>huffman>huffman>huffman>huffman>huffman>huffman"), MessageType::bytes()));
}

TEST(Genome, OperatorsPreserveValidityAndLimits) {
  const MessageType types[] = {MessageType::bytes(), MessageType::numeric(8), MessageType::numeric(1),
                               MessageType::structure(6), MessageType::string()};
  GenomeLimits limits;
  for (MessageType t : types) {
    SplitMix64 rng(static_cast<uint64_t>(t.width) * 7 + static_cast<uint64_t>(t.tag));
    for (int i = 0; i < 200; ++i) {
      Description a = random_genome(t, rng, limits);
      Description b = random_genome(t, rng, limits);
      ASSERT_TRUE(genome_valid(a, t, limits)) << to_text(a);
      Description m = mutate(a, t, rng, 0.5, limits);
      EXPECT_TRUE(genome_valid(m, t, limits)) << to_text(a) << " -> " << to_text(m);
      EXPECT_LE(node_count(m), limits.max_nodes);
      auto [c, d] = crossover(a, b, t, rng, limits);
      EXPECT_TRUE(genome_valid(c, t, limits)) << to_text(c);
      EXPECT_TRUE(genome_valid(d, t, limits)) << to_text(d);
    }
  }
}

TEST(Genome, OperatorsAreDeterministic) {
  auto run = [] {
    SplitMix64 rng(99);
    std::vector<std::string> out;
    Description g = random_genome(MessageType::numeric(4), rng);
    for (int i = 0; i < 50; ++i) {
      g = mutate(g, MessageType::numeric(4), rng, 0.4);
      out.push_back(genome_text(g));
    }
    return out;
  };
  EXPECT_EQ(run(), run());
}

TEST(Fitness, ObjectivesAndCache) {
  FitnessEvaluator f({Stream::of_bytes(Bytes(1000, 3))});
  Objectives store = f.evaluate("store");
  Objectives lz = f.evaluate("lz>huffman");
  EXPECT_LT(lz[0], store[0]);
  EXPECT_GT(store[0], 1000);
  EXPECT_EQ(f.evaluate("delta")[0], kInfeasible);
  const size_t before = f.evaluations();
  EXPECT_EQ(f.evaluate("store"), store);
  EXPECT_EQ(f.evaluations(), before);
}

TEST(Fitness, StreamPrefixIsElementAligned) {
  Stream s = Stream::of_numeric(8, Bytes(800, 1));
  EXPECT_EQ(stream_prefix(s, 100).payload.size(), 96u);
  Stream t = Stream::of_strings({"abc", "de", "fghij"});
  EXPECT_EQ(stream_prefix(t, 6).strings(), (std::vector<std::string>{"abc", "de"}));
}

TEST(Evolve, FrontIsNonDominatedAndDeterministic) {
  std::vector<Stream> samples;
  SplitMix64 rng(5);
  for (int i = 0; i < 3; ++i) samples.push_back(testing::random_fixed(TypeTag::Numeric, 8, testing::Shape::Ascending, rng));
  EvolveOptions o;
  o.population = 12;
  o.generations = 4;
  auto a = evolve_backend(samples, o, {"@numeric"});
  auto b = evolve_backend(samples, o, {"@numeric"});
  ASSERT_FALSE(a.empty());
  EXPECT_TRUE(mutually_non_dominated(a));
  ASSERT_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].genome, b[i].genome);
    EXPECT_EQ(a[i].objectives, b[i].objectives);
  }
  // The extra genome is part of the candidate set, so nothing on the front is
  // larger than it and faster to decode at the same time.
  FitnessEvaluator f(samples);
  Objectives extra = f.evaluate("@numeric");
  for (const auto& p : a) EXPECT_FALSE(dominates(extra, p.objectives));
}

std::vector<std::vector<NamedStream>> csv_samples(int n, size_t bytes) {
  std::vector<std::vector<NamedStream>> out;
  for (int i = 0; i < n; ++i) {
    out.push_back(*csv_parse(Stream::of_bytes(testing::synthetic_csv(100 + i, bytes, i * 1'000'000))));
  }
  return out;
}

TEST(Cluster, MergesDecreaseTotalStrictly) {
  auto samples = csv_samples(3, 40000);
  ClusterResult r = cluster_streams(samples, "lz>huffman");
  const size_t k = samples[0].size();
  ASSERT_GE(r.totals.size(), 1u);
  EXPECT_LE(r.totals.size() - 1, k - 1);
  for (size_t i = 1; i < r.totals.size(); ++i) EXPECT_LT(r.totals[i], r.totals[i - 1]);
  size_t members = 0;
  std::set<std::string> seen;
  for (const auto& c : r.clusters) {
    members += c.size();
    for (const auto& t : c) EXPECT_TRUE(seen.insert(t).second);
  }
  EXPECT_EQ(members, k);
  EXPECT_EQ(r.clusters.size(), k - (r.totals.size() - 1));
}

TEST(Cluster, NeverMergesAcrossTypes) {
  std::vector<std::vector<NamedStream>> samples;
  for (int i = 0; i < 2; ++i) samples.push_back(sao_parse(Stream::of_bytes(testing::synthetic_sao(i, 500))));
  ClusterResult r = cluster_streams(samples, "lz>huffman");
  std::map<std::string, MessageType> types;
  for (const auto& ns : samples[0]) types[ns.tag] = ns.stream.type;
  for (const auto& c : r.clusters) {
    for (const auto& t : c) EXPECT_EQ(types[t], types[c[0]]);
  }
  for (size_t i = 1; i < r.totals.size(); ++i) EXPECT_LT(r.totals[i], r.totals[i - 1]);
}

TEST(Train, SmallRunIsDeterministicAndLossless) {
  std::vector<Bytes> files;
  for (int i = 0; i < 4; ++i) files.push_back(testing::synthetic_csv(200 + i, 60000, i * 1'000'000));
  files.push_back(Bytes{0xFF, 0x00, 0x01});  // not CSV: skipped with a warning
  TrainOptions o;
  o.evolve.population = 8;
  o.evolve.generations = 2;
  o.evolve.eval_bytes = 32 << 10;
  o.capacity = 4;
  TrainResult a = train(files, csv_config(), o);
  TrainResult b = train(files, csv_config(), o);
  ASSERT_FALSE(a.configs.empty());
  EXPECT_LE(a.configs.size(), 4u);
  EXPECT_EQ(a.warnings.size(), 1u);
  EXPECT_EQ(a.training_samples, 3u);
  EXPECT_EQ(a.held_out_samples, 1u);
  ASSERT_EQ(a.configs.size(), b.configs.size());
  for (size_t i = 0; i < a.configs.size(); ++i) {
    EXPECT_EQ(serialize_compressor(a.configs[i].config), serialize_compressor(b.configs[i].config));
    EXPECT_EQ(a.configs[i].config.name, "csv-trained-" + std::to_string(i));
    if (i > 0) {
      EXPECT_LE(a.configs[i - 1].objectives[0], a.configs[i].objectives[0]);
    }
    Compressor c(a.configs[i].config);
    for (int f = 0; f < 4; ++f) EXPECT_EQ(decompress(c.compress(files[f])).payload, files[f]);
  }
  EXPECT_EQ(a.report(), b.report());
  EXPECT_NE(a.report().find("held"), std::string::npos);
}

TEST(Train, RejectsUnusableSamples) {
  EXPECT_EQ(code_of([] { train({}, csv_config()); }), ErrorCode::Usage);
  EXPECT_EQ(code_of([] { train({Bytes{1, 2, 3}}, sao_config()); }), ErrorCode::Usage);
}

}  // namespace
}  // namespace gp
