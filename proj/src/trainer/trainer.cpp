// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

#include "trainer/trainer.hpp"

#include <algorithm>
#include <cstdarg>
#include <cstdio>
#include <set>
#include <sstream>

#include "engine/engine.hpp"
#include "format/frame.hpp"

namespace gp {

namespace {

struct Individual {
  Description genome;
  std::string text;
  Objectives objectives{};
  size_t rank = 0;
  double crowding = 0;
};

void rank_population(std::vector<Individual>& pop) {
  std::vector<Objectives> objs;
  for (const Individual& ind : pop) objs.push_back(ind.objectives);
  auto fronts = non_dominated_sort(objs);
  for (size_t r = 0; r < fronts.size(); ++r) {
    std::vector<double> d = crowding_distances(objs, fronts[r]);
    for (size_t k = 0; k < fronts[r].size(); ++k) {
      pop[fronts[r][k]].rank = r;
      pop[fronts[r][k]].crowding = d[k];
    }
  }
}

// Better rank first, then larger crowding distance.
bool better(const Individual& a, const Individual& b) {
  if (a.rank != b.rank) return a.rank < b.rank;
  return a.crowding > b.crowding;
}

const Individual& tournament(const std::vector<Individual>& pop, size_t size, SplitMix64& rng) {
  size_t best = rng.below(pop.size());
  for (size_t k = 1; k < size; ++k) {
    size_t c = rng.below(pop.size());
    if (better(pop[c], pop[best]) || (!better(pop[best], pop[c]) && c < best)) best = c;
  }
  return pop[best];
}

std::vector<Individual> select_survivors(std::vector<Individual> all, size_t n) {
  std::vector<Objectives> objs;
  for (const Individual& ind : all) objs.push_back(ind.objectives);
  std::vector<Individual> next;
  for (const auto& front : non_dominated_sort(objs)) {
    std::vector<double> d = crowding_distances(objs, front);
    if (next.size() + front.size() <= n) {
      for (size_t i : front) next.push_back(all[i]);
      continue;
    }
    std::vector<size_t> order(front.size());
    for (size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return d[a] > d[b]; });
    for (size_t k = 0; next.size() < n; ++k) next.push_back(all[front[order[k]]]);
    break;
  }
  rank_population(next);
  return next;
}

uint64_t stored_bytes(const CompressResult& r) {
  uint64_t total = 0;
  for (const Stream& s : r.stored) total += s.payload.size() + s.lengths.size();
  return total;
}

Stream concat_streams(const std::vector<const Stream*>& parts) {
  Stream out{parts.front()->type, {}, {}};
  for (const Stream* s : parts) {
    out.payload.insert(out.payload.end(), s->payload.begin(), s->payload.end());
    out.lengths.insert(out.lengths.end(), s->lengths.begin(), s->lengths.end());
  }
  return out;
}

std::string signature_of(const std::vector<NamedStream>& streams) {
  std::string sig;
  for (const NamedStream& s : streams) sig += s.tag + ":" + s.stream.type.to_string() + ";";
  return sig;
}

std::string format_row(const char* fmt, ...) __attribute__((format(printf, 1, 2)));
std::string format_row(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return buf;
}

}  // namespace

Stream stream_prefix(const Stream& s, size_t max_bytes) {
  if (s.payload.size() <= max_bytes) return s;
  Stream out{s.type, {}, {}};
  if (s.type.tag == TypeTag::String) {
    size_t bytes = 0;
    for (uint64_t len : s.lengths) {
      if (bytes + len > max_bytes && !out.lengths.empty()) break;
      out.lengths.push_back(len);
      bytes += len;
    }
    out.payload.assign(s.payload.begin(), s.payload.begin() + static_cast<std::ptrdiff_t>(bytes));
    return out;
  }
  const size_t w = s.type.element_width();
  const size_t keep = std::max<size_t>(max_bytes / w, 1) * w;
  out.payload.assign(s.payload.begin(), s.payload.begin() + static_cast<std::ptrdiff_t>(keep));
  return out;
}

FitnessEvaluator::FitnessEvaluator(std::vector<Stream> samples, const CodecRegistry& registry)
    : samples_(std::move(samples)), registry_(&registry) {
  if (samples_.empty()) fail(ErrorCode::Usage, "fitness evaluation needs at least one sample");
  type_ = samples_[0].type;
}

Objectives FitnessEvaluator::evaluate(const std::string& genome) {
  if (auto it = cache_.find(genome); it != cache_.end()) return it->second;
  ++evaluations_;
  Objectives obj{0, 0, 0};
  try {
    GraphPtr g = build_graph(genome, *registry_);
    for (const Stream& s : samples_) {
      CompressResult r = compress(*g, s, kMinFormatVersion, *registry_);
      obj[0] += static_cast<double>(write_frame(r.trace, r.stored, kMinFormatVersion, *registry_).size());
      obj[1] += r.encode_cost;
      obj[2] += r.decode_cost;
      if (decompress_trace(r.trace, std::move(r.stored), *registry_) != s) {
        obj = {kInfeasible, kInfeasible, kInfeasible};
        break;
      }
    }
  } catch (const Error&) {
    obj = {kInfeasible, kInfeasible, kInfeasible};
  }
  cache_.emplace(genome, obj);
  return obj;
}

std::vector<ParetoPoint> evolve_backend(const std::vector<Stream>& samples, const EvolveOptions& options,
                                        const std::vector<std::string>& extra) {
  if (samples.empty()) fail(ErrorCode::Usage, "evolve_backend needs at least one sample");
  std::vector<Stream> trimmed;
  const size_t per_sample = std::max<size_t>(options.eval_bytes / samples.size(), 1);
  for (const Stream& s : samples) trimmed.push_back(stream_prefix(s, per_sample));
  FitnessEvaluator fitness(std::move(trimmed));
  const MessageType type = fitness.input_type();
  SplitMix64 rng(options.seed);

  auto make = [&](Description d) {
    Individual ind;
    ind.genome = normalize_genome(std::move(d));
    ind.text = genome_text(ind.genome);
    ind.objectives = fitness.evaluate(ind.text);
    return ind;
  };

  std::vector<Individual> seeds;
  for (const std::string& text : seed_genomes()) {
    Description d = normalize_genome(parse_description(text));
    if (genome_valid(d, type, options.limits)) seeds.push_back(make(std::move(d)));
  }
  std::vector<Individual> pop = seeds;
  std::set<std::string> present;
  for (const Individual& ind : pop) present.insert(ind.text);
  const size_t target = std::max(options.population, pop.size());
  for (size_t attempt = 0; pop.size() < target && attempt < 16 * target; ++attempt) {
    Description d = random_genome(type, rng, options.limits);
    if (present.insert(genome_text(d)).second) pop.push_back(make(std::move(d)));
  }
  rank_population(pop);

  for (size_t gen = 0; gen < options.generations && !pop.empty(); ++gen) {
    std::vector<Individual> offspring;
    while (offspring.size() < options.population) {
      const Individual& a = tournament(pop, options.tournament, rng);
      const Individual& b = tournament(pop, options.tournament, rng);
      Description x = a.genome;
      Description y = b.genome;
      if (rng.chance(options.crossover_rate)) std::tie(x, y) = crossover(x, y, type, rng, options.limits);
      offspring.push_back(make(mutate(x, type, rng, options.mutation_rate, options.limits)));
      if (offspring.size() < options.population) {
        offspring.push_back(make(mutate(y, type, rng, options.mutation_rate, options.limits)));
      }
    }
    std::vector<Individual> all = std::move(pop);
    all.insert(all.end(), std::make_move_iterator(offspring.begin()), std::make_move_iterator(offspring.end()));
    pop = select_survivors(std::move(all), options.population);
  }

  std::vector<ParetoPoint> candidates;
  std::set<std::string> seen;
  auto add = [&](const std::string& text, const Objectives& obj) {
    if (obj[0] == kInfeasible || !seen.insert(text).second) return;
    candidates.push_back({text, obj, 0});
  };
  for (const Individual& ind : pop) add(ind.text, ind.objectives);
  for (const Individual& ind : seeds) add(ind.text, ind.objectives);
  for (const std::string& text : extra) add(text, fitness.evaluate(text));

  std::vector<Objectives> objs;
  for (const ParetoPoint& p : candidates) objs.push_back(p.objectives);
  std::vector<size_t> front = non_dominated(objs);
  std::vector<double> d = crowding_distances(objs, front);
  std::vector<ParetoPoint> out;
  for (size_t k = 0; k < front.size(); ++k) {
    out.push_back(candidates[front[k]]);
    out.back().crowding_distance = d[k];
  }
  return out;
}

std::vector<Stream> cluster_samples(const std::vector<std::vector<NamedStream>>& samples,
                                    const std::vector<std::string>& tags) {
  std::vector<Stream> out;
  for (const auto& sample : samples) {
    std::vector<const Stream*> parts;
    for (const std::string& tag : tags) {
      for (const NamedStream& ns : sample) {
        if (ns.tag == tag) parts.push_back(&ns.stream);
      }
    }
    if (parts.size() != tags.size()) fail(ErrorCode::Usage, "sample is missing a clustered stream");
    out.push_back(concat_streams(parts));
  }
  return out;
}

ClusterResult cluster_streams(const std::vector<std::vector<NamedStream>>& samples, const std::string& backend,
                              size_t eval_bytes) {
  if (samples.empty()) fail(ErrorCode::Usage, "clustering needs at least one sample");
  const std::vector<NamedStream>& first = samples[0];
  for (const auto& s : samples) {
    if (signature_of(s) != signature_of(first)) fail(ErrorCode::Usage, "samples disagree on stream tags or types");
  }
  const size_t k = first.size();
  const size_t cap = std::max<size_t>(eval_bytes / samples.size(), 1);
  std::vector<std::vector<Stream>> trimmed(samples.size());
  for (size_t s = 0; s < samples.size(); ++s) {
    for (const NamedStream& ns : samples[s]) trimmed[s].push_back(stream_prefix(ns.stream, cap));
  }
  GraphPtr g = build_graph(backend);
  std::map<std::vector<size_t>, double> cache;
  auto size_of = [&](const std::vector<size_t>& members) {
    if (auto it = cache.find(members); it != cache.end()) return it->second;
    double total = 0;
    try {
      for (const auto& sample : trimmed) {
        std::vector<const Stream*> parts;
        for (size_t m : members) parts.push_back(&sample[m]);
        total += static_cast<double>(stored_bytes(compress(*g, concat_streams(parts), kMinFormatVersion)));
        if (members.size() > 1) total += 8.0 * static_cast<double>(members.size());
      }
    } catch (const Error&) {
      total = kInfeasible;
    }
    cache.emplace(members, total);
    return total;
  };

  std::vector<std::vector<size_t>> clusters;
  for (size_t i = 0; i < k; ++i) clusters.push_back({i});
  ClusterResult result;
  auto total = [&] {
    double t = 0;
    for (const auto& c : clusters) t += size_of(c);
    return t;
  };
  result.totals.push_back(total());
  while (clusters.size() > 1) {
    double best_saving = 0;
    size_t bi = 0, bj = 0;
    for (size_t i = 0; i < clusters.size(); ++i) {
      for (size_t j = i + 1; j < clusters.size(); ++j) {
        if (first[clusters[i][0]].stream.type != first[clusters[j][0]].stream.type) continue;
        std::vector<size_t> merged = clusters[i];
        merged.insert(merged.end(), clusters[j].begin(), clusters[j].end());
        std::sort(merged.begin(), merged.end());
        const double saving = size_of(clusters[i]) + size_of(clusters[j]) - size_of(merged);
        if (saving > best_saving) {
          best_saving = saving;
          bi = i;
          bj = j;
        }
      }
    }
    if (best_saving <= 0) break;
    clusters[bi].insert(clusters[bi].end(), clusters[bj].begin(), clusters[bj].end());
    std::sort(clusters[bi].begin(), clusters[bi].end());
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
    result.totals.push_back(total());
  }
  for (const auto& c : clusters) {
    std::vector<std::string> tags;
    for (size_t i : c) tags.push_back(first[i].tag);
    result.clusters.push_back(std::move(tags));
  }
  return result;
}

std::optional<std::vector<NamedStream>> parse_sample(const CompressorConfig& base, ByteView data) {
  Stream file = Stream::of_bytes(Bytes(data.begin(), data.end()));
  switch (base.parser) {
    case ParserKind::None:
      return std::vector<NamedStream>{{"input", std::move(file)}};
    case ParserKind::Sao:
      try {
        return sao_parse(file);
      } catch (const Error&) {
        return std::nullopt;
      }
    case ParserKind::Csv: {
      auto parsed = csv_parse(file, base.csv);
      if (parsed && parsed->empty()) return std::nullopt;
      return parsed;
    }
  }
  return std::nullopt;
}

TrainResult train(const std::vector<Bytes>& samples, const CompressorConfig& base, const TrainOptions& options) {
  if (samples.empty()) fail(ErrorCode::Usage, "no training samples");
  TrainResult result;
  std::vector<std::vector<NamedStream>> parsed;
  std::vector<const Bytes*> files;
  for (size_t i = 0; i < samples.size(); ++i) {
    auto p = parse_sample(base, samples[i]);
    if (!p) {
      result.warnings.push_back("sample " + std::to_string(i) + ": parser '" + parser_name(base.parser) +
                                "' does not apply, skipped");
      continue;
    }
    if (!parsed.empty() && signature_of(*p) != signature_of(parsed[0])) {
      result.warnings.push_back("sample " + std::to_string(i) + ": stream layout differs from the first usable sample, skipped");
      continue;
    }
    parsed.push_back(std::move(*p));
    files.push_back(&samples[i]);
  }
  if (parsed.empty()) fail(ErrorCode::Usage, "no training sample could be parsed");

  std::vector<const Bytes*> held_out;
  if (parsed.size() >= 3) {
    held_out.push_back(files.back());
    files.pop_back();
    parsed.pop_back();
  }
  result.training_samples = files.size();
  result.held_out_samples = held_out.size();
  for (const Bytes* f : files) result.training_original += f->size();
  for (const Bytes* f : held_out) result.held_out_original += f->size();

  result.clustering = cluster_streams(parsed, "lz>huffman", options.evolve.eval_bytes);

  std::vector<ParetoPoint> acc = {{"", {0, 0, 0}, 0}};
  std::vector<MessageType> types;
  for (size_t ci = 0; ci < result.clustering.clusters.size(); ++ci) {
    std::vector<Stream> cs = cluster_samples(parsed, result.clustering.clusters[ci]);
    types.push_back(cs[0].type);
    EvolveOptions eo = options.evolve;
    eo.seed = options.evolve.seed + 0x9E3779B97F4A7C15ull * (ci + 1);
    std::vector<ParetoPoint> front = evolve_backend(cs, eo, {default_backend(cs[0].type)});
    std::vector<ParetoPoint> combos;
    for (const ParetoPoint& a : acc) {
      for (const ParetoPoint& p : front) {
        ParetoPoint c;
        c.genome = a.genome.empty() ? p.genome : a.genome + "\n" + p.genome;
        for (size_t k = 0; k < 3; ++k) c.objectives[k] = a.objectives[k] + p.objectives[k];
        combos.push_back(std::move(c));
      }
    }
    acc = merge_pareto({combos}, options.capacity);
  }

  for (const ParetoPoint& p : acc) {
    TrainedConfig tc;
    tc.config = base;
    tc.config.clusters.clear();
    std::istringstream lines(p.genome);
    std::string backend;
    for (size_t ci = 0; std::getline(lines, backend); ++ci) {
      tc.config.clusters.push_back({result.clustering.clusters[ci], backend, types[ci]});
    }
    tc.objectives = p.objectives;
    Compressor c(tc.config);
    auto measure = [&](const std::vector<const Bytes*>& set, uint64_t& total) {
      for (const Bytes* f : set) {
        Bytes frame = c.compress(*f);
        if (decompress_all(frame) != *f) fail(ErrorCode::Internal, "trained config failed to round-trip a sample");
        total += frame.size();
      }
    };
    measure(files, tc.training_bytes);
    measure(held_out, tc.held_out_bytes);
    result.configs.push_back(std::move(tc));
  }
  std::stable_sort(result.configs.begin(), result.configs.end(), [](const TrainedConfig& a, const TrainedConfig& b) {
    if (a.training_bytes != b.training_bytes) return a.training_bytes < b.training_bytes;
    return a.objectives < b.objectives;
  });
  for (size_t i = 0; i < result.configs.size(); ++i) {
    result.configs[i].config.name = base.name + "-trained-" + std::to_string(i);
  }
  return result;
}

std::string TrainResult::report() const {
  std::string out = format_row("%zu training samples (%llu bytes), %zu held out (%llu bytes)\n", training_samples,
                               static_cast<unsigned long long>(training_original), held_out_samples,
                               static_cast<unsigned long long>(held_out_original));
  out += "clusters:";
  for (const auto& c : clustering.clusters) {
    out += " [";
    for (size_t i = 0; i < c.size(); ++i) out += (i ? " " : "") + c[i];
    out += "]";
  }
  out += "\n";
  out += format_row("%-4s %12s %8s %12s %8s %14s %14s\n", "cfg", "train_bytes", "ratio", "heldout_bytes", "ratio",
                    "encode_cost", "decode_cost");
  for (size_t i = 0; i < configs.size(); ++i) {
    const TrainedConfig& c = configs[i];
    auto ratio = [](uint64_t orig, uint64_t comp) { return comp == 0 ? 0.0 : double(orig) / double(comp); };
    out += format_row("%-4zu %12llu %8.3f %12llu %8.3f %14.0f %14.0f\n", i,
                      static_cast<unsigned long long>(c.training_bytes), ratio(training_original, c.training_bytes),
                      static_cast<unsigned long long>(c.held_out_bytes), ratio(held_out_original, c.held_out_bytes),
                      c.objectives[1], c.objectives[2]);
  }
  return out;
}

}  // namespace gp
