// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

// graphpress command-line tool. Talks to the library only through the C API.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "graphpress/graphpress.h"

namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kUsage = 1, kData = 2, kInternal = 3 };

struct Failure {
  int exit_code;
  std::string message;
};

int exit_for(gp_status s) {
  switch (s) {
    case GP_OK: return kOk;
    case GP_ERR_USAGE:
    case GP_ERR_NOT_FOUND: return kUsage;
    case GP_ERR_INTERNAL: return kInternal;
    default: return kData;
  }
}

void check(gp_status s, const std::string& context) {
  if (s != GP_OK) throw Failure{exit_for(s), context + ": " + gp_status_name(s) + " error: " + gp_last_error()};
}

struct Buffer {
  gp_buffer b{nullptr, 0};
  ~Buffer() { gp_buffer_free(&b); }
  gp_buffer* operator&() { return &b; }
  std::string_view view() const { return {reinterpret_cast<const char*>(b.data), b.size}; }
};

struct CompressorDeleter {
  void operator()(gp_compressor* c) const { gp_compressor_free(c); }
};
using CompressorPtr = std::unique_ptr<gp_compressor, CompressorDeleter>;

std::vector<uint8_t> read_file(const std::string& path) {
  if (path == "-") {
    std::vector<uint8_t> data((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
    return data;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kUsage, "cannot open '" + path + "'"};
  return std::vector<uint8_t>((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::vector<uint8_t>& data) {
  if (path == "-") {
    std::cout.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Failure{kUsage, "cannot write '" + path + "'"};
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw Failure{kUsage, "write to '" + path + "' failed"};
}

struct Selection {
  std::string profile;
  std::string config;
  char delimiter = ',';
  bool no_header = false;
};

void add_selection(CLI::App* cmd, Selection& sel) {
  auto* p = cmd->add_option("-p,--profile", sel.profile, "Built-in profile: generic, sao, csv");
  auto* c = cmd->add_option("-c,--config", sel.config, "Compressor config file (.zlc)");
  p->excludes(c);
  c->excludes(p);
  cmd->add_option("--delimiter", sel.delimiter, "Field delimiter for the csv profile (e.g. '|' or a tab)");
  cmd->add_flag("--no-header", sel.no_header, "The csv input has no header row");
}

CompressorPtr make_compressor(const Selection& sel) {
  gp_compressor* c = nullptr;
  if (!sel.config.empty()) {
    std::vector<uint8_t> text = read_file(sel.config);
    check(gp_compressor_from_config(reinterpret_cast<const char*>(text.data()), text.size(), &c), sel.config);
  } else if (sel.profile.empty()) {
    throw Failure{kUsage, "select a compressor with --profile or --config"};
  } else if (sel.profile == "csv") {
    check(gp_compressor_from_csv(static_cast<uint8_t>(sel.delimiter), '"', sel.no_header ? 0 : 1, &c), "csv profile");
  } else {
    check(gp_compressor_from_profile(sel.profile.c_str(), &c), "profile '" + sel.profile + "'");
  }
  return CompressorPtr(c);
}

std::vector<uint8_t> compress_all(const gp_compressor* c, const std::vector<uint8_t>& in, unsigned version,
                                  size_t chunk) {
  std::vector<uint8_t> out;
  size_t offset = 0;
  do {
    const size_t n = chunk == 0 ? in.size() : std::min(chunk, in.size() - offset);
    Buffer frame;
    check(gp_compress(c, in.data() + offset, n, version, &frame), "compress");
    out.insert(out.end(), frame.b.data, frame.b.data + frame.b.size);
    offset += n;
  } while (offset < in.size());
  return out;
}

struct FrameSpan {
  size_t offset;
  size_t size;
};

std::vector<FrameSpan> frame_spans(const std::vector<uint8_t>& data) {
  std::vector<FrameSpan> spans;
  size_t offset = 0;
  do {
    Buffer text;
    size_t consumed = 0;
    check(gp_inspect(data.data() + offset, data.size() - offset, &text, &consumed),
          "frame at offset " + std::to_string(offset));
    spans.push_back({offset, consumed});
    offset += consumed;
  } while (offset < data.size());
  return spans;
}

std::vector<uint8_t> decompress_all(const std::vector<uint8_t>& data, bool parallel) {
  std::vector<uint8_t> out;
  if (!parallel) {
    size_t offset = 0;
    do {
      Buffer plain;
      size_t consumed = 0;
      check(gp_decompress(data.data() + offset, data.size() - offset, 0, &plain, &consumed),
            "frame at offset " + std::to_string(offset));
      out.insert(out.end(), plain.b.data, plain.b.data + plain.b.size);
      offset += consumed;
    } while (offset < data.size());
    return out;
  }
  std::vector<FrameSpan> spans = frame_spans(data);
  std::vector<std::vector<uint8_t>> parts(spans.size());
  std::vector<gp_status> status(spans.size(), GP_OK);
  std::vector<std::string> errors(spans.size());
  const size_t workers = std::max<size_t>(1, std::min<size_t>(spans.size(), std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (size_t i = w; i < spans.size(); i += workers) {
        Buffer plain;
        status[i] = gp_decompress(data.data() + spans[i].offset, spans[i].size, 0, &plain, nullptr);
        if (status[i] == GP_OK) {
          parts[i].assign(plain.b.data, plain.b.data + plain.b.size);
        } else {
          errors[i] = gp_last_error();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (size_t i = 0; i < spans.size(); ++i) {
    if (status[i] != GP_OK) {
      throw Failure{exit_for(status[i]), "frame at offset " + std::to_string(spans[i].offset) + ": " + errors[i]};
    }
    out.insert(out.end(), parts[i].begin(), parts[i].end());
  }
  return out;
}

std::string default_output(const std::string& input, bool compressing) {
  if (input == "-") return "-";
  if (compressing) return input + ".gpz";
  if (input.size() > 4 && input.ends_with(".gpz")) return input.substr(0, input.size() - 4);
  return input + ".out";
}

int run_compress(const std::string& input, std::string output, const Selection& sel, unsigned version,
                 size_t chunk) {
  CompressorPtr c = make_compressor(sel);
  if (version != 0) check(gp_compressor_check_version(c.get(), version), "format version " + std::to_string(version));
  std::vector<uint8_t> in = read_file(input);
  std::vector<uint8_t> out = compress_all(c.get(), in, version, chunk);
  if (output.empty()) output = default_output(input, true);
  write_file(output, out);
  std::fprintf(stderr, "%s: %zu -> %zu bytes, ratio %.3f\n", input.c_str(), in.size(), out.size(),
               out.empty() ? 0.0 : static_cast<double>(in.size()) / static_cast<double>(out.size()));
  return kOk;
}

int run_decompress(const std::string& input, std::string output) {
  std::vector<uint8_t> in = read_file(input);
  std::vector<uint8_t> out = decompress_all(in, false);
  if (output.empty()) output = default_output(input, false);
  write_file(output, out);
  std::fprintf(stderr, "%s: %zu -> %zu bytes\n", input.c_str(), in.size(), out.size());
  return kOk;
}

int run_inspect(const std::string& input) {
  std::vector<uint8_t> data = read_file(input);
  size_t offset = 0;
  size_t index = 0;
  do {
    Buffer text;
    size_t consumed = 0;
    check(gp_inspect(data.data() + offset, data.size() - offset, &text, &consumed),
          "frame at offset " + std::to_string(offset));
    std::cout << "frame " << index++ << " at offset " << offset << ": " << text.view();
    offset += consumed;
  } while (offset < data.size());
  return kOk;
}

int run_train(const std::string& dir, const std::string& prefix, const Selection& sel, gp_train_options options) {
  std::vector<fs::path> paths;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file()) paths.push_back(entry.path());
  }
  if (ec) throw Failure{kUsage, "cannot read sample directory '" + dir + "': " + ec.message()};
  if (paths.empty()) throw Failure{kUsage, "sample directory '" + dir + "' contains no files"};
  std::sort(paths.begin(), paths.end());
  std::vector<std::vector<uint8_t>> files;
  std::vector<gp_buffer> views;
  for (const fs::path& p : paths) files.push_back(read_file(p.string()));
  for (auto& f : files) views.push_back({f.data(), f.size()});

  CompressorPtr base = make_compressor(sel);
  gp_train_result* raw = nullptr;
  check(gp_train(base.get(), views.data(), views.size(), &options, &raw), "train");
  std::unique_ptr<gp_train_result, void (*)(gp_train_result*)> result(raw, gp_train_result_free);
  for (size_t i = 0; i < gp_train_result_warning_count(raw); ++i) {
    std::fprintf(stderr, "warning: %s\n", gp_train_result_warning(raw, i));
  }
  const size_t n = gp_train_result_count(raw);
  for (size_t i = 0; i < n; ++i) {
    Buffer text;
    check(gp_train_result_config(raw, i, &text), "config " + std::to_string(i));
    const std::string path = prefix + "." + std::to_string(i) + ".zlc";
    write_file(path, std::vector<uint8_t>(text.b.data, text.b.data + text.b.size));
    std::fprintf(stderr, "wrote %s\n", path.c_str());
  }
  Buffer report;
  check(gp_train_result_report(raw, &report), "report");
  std::cout << report.view();
  return kOk;
}

struct BenchRow {
  std::string profile;
  double ratio = 0;
  double compress_mibs = 0;
  double decompress_mibs = 0;
  std::string error;
};

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

int run_benchmark(const std::vector<std::string>& inputs, const std::vector<std::string>& profiles, size_t repeat,
                  size_t chunk, bool csv, bool parallel) {
  using clock = std::chrono::steady_clock;
  repeat = std::max<size_t>(repeat, 3);
  if (csv) std::cout << "input,profile,ratio,compress_mib_s,decompress_mib_s,error\n";
  for (const std::string& input : inputs) {
    std::vector<uint8_t> data = read_file(input);
    const double mib = static_cast<double>(data.size()) / (1024.0 * 1024.0);
    if (!csv) {
      std::printf("%s (%zu bytes)\n%-10s %10s %14s %16s\n", input.c_str(), data.size(), "profile", "ratio",
                  "compress MiB/s", "decompress MiB/s");
    }
    for (const std::string& profile : profiles) {
      BenchRow row;
      row.profile = profile;
      try {
        Selection sel;
        sel.profile = profile;
        CompressorPtr c = make_compressor(sel);
        std::vector<double> ct, dt;
        std::vector<uint8_t> frames;
        for (size_t r = 0; r < repeat; ++r) {
          auto t0 = clock::now();
          frames = compress_all(c.get(), data, 0, chunk);
          auto t1 = clock::now();
          std::vector<uint8_t> back = decompress_all(frames, parallel);
          auto t2 = clock::now();
          if (back != data) throw Failure{kInternal, "round trip mismatch"};
          ct.push_back(std::chrono::duration<double>(t1 - t0).count());
          dt.push_back(std::chrono::duration<double>(t2 - t1).count());
        }
        row.ratio = frames.empty() ? 0 : static_cast<double>(data.size()) / static_cast<double>(frames.size());
        const double c_med = median(ct), d_med = median(dt);
        row.compress_mibs = c_med > 0 ? mib / c_med : 0;
        row.decompress_mibs = d_med > 0 ? mib / d_med : 0;
      } catch (const Failure& f) {
        row.error = f.message;
      }
      if (csv) {
        std::string err = row.error;
        std::replace(err.begin(), err.end(), ',', ';');
        std::replace(err.begin(), err.end(), '\n', ' ');
        std::printf("%s,%s,%.4f,%.3f,%.3f,%s\n", input.c_str(), row.profile.c_str(), row.ratio, row.compress_mibs,
                    row.decompress_mibs, err.c_str());
      } else if (!row.error.empty()) {
        std::printf("%-10s error: %s\n", row.profile.c_str(), row.error.c_str());
      } else {
        std::printf("%-10s %10.3f %14.2f %16.2f\n", row.profile.c_str(), row.ratio, row.compress_mibs,
                    row.decompress_mibs);
      }
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graphpress: graph-based lossless compression"};
  app.require_subcommand(1);
  app.set_version_flag("--version", gp_version_string());

  std::string input, output;
  Selection sel;
  unsigned version = 0;
  size_t chunk = 0;

  auto* compress = app.add_subcommand("compress", "Compress a file into one or more frames");
  compress->add_option("input", input, "Input file ('-' for stdin)")->required();
  compress->add_option("-o,--output", output, "Output file ('-' for stdout; default: input.gpz)");
  add_selection(compress, sel);
  compress->add_option("--format-version", version, "Wire format version to emit")
      ->check(CLI::Range(gp_min_format_version(), gp_max_format_version()));
  compress->add_option("--chunk-size", chunk, "Bytes per frame (default: whole file)");

  auto* decompress = app.add_subcommand("decompress", "Decompress frames; needs no compressor selection");
  decompress->add_option("input", input, "Input file ('-' for stdin)")->required();
  decompress->add_option("-o,--output", output, "Output file ('-' for stdout)");

  auto* inspect = app.add_subcommand("inspect", "Print the resolved graph of each frame");
  inspect->add_option("input", input, "Frame file")->required();

  gp_train_options topt;
  gp_train_options_default(&topt);
  std::string samples_dir, prefix = "trained";
  auto* train = app.add_subcommand("train", "Train compressor configs from a directory of samples");
  train->add_option("samples", samples_dir, "Directory of sample files")->required();
  train->add_option("-o,--output", prefix, "Output prefix; writes PREFIX.0.zlc ...");
  add_selection(train, sel);
  train->add_option("--seed", topt.seed, "RNG seed");
  train->add_option("--population", topt.population, "Population size")->check(CLI::Range(2, 100000));
  train->add_option("--generations", topt.generations, "Generations");
  train->add_option("--tournament", topt.tournament, "Tournament size")->check(CLI::Range(1, 1000));
  train->add_option("--mutation-rate", topt.mutation_rate, "Mutation probability per node")->check(CLI::Range(0.0, 1.0));
  train->add_option("--crossover-rate", topt.crossover_rate, "Crossover probability")->check(CLI::Range(0.0, 1.0));
  train->add_option("--eval-bytes", topt.eval_bytes, "Bytes evaluated per fitness call")->check(CLI::Range(1ul, SIZE_MAX));
  train->add_option("--configs", topt.capacity, "Number of Pareto configs to emit")->check(CLI::Range(1, 1000));

  std::vector<std::string> bench_inputs;
  std::vector<std::string> bench_profiles = {"generic", "sao", "csv"};
  size_t repeat = 3;
  bool csv = false, parallel = false;
  auto* bench = app.add_subcommand("benchmark", "Measure ratio and speed per profile");
  bench->add_option("inputs", bench_inputs, "Input files")->required();
  bench->add_option("--profiles", bench_profiles, "Profiles to run")->delimiter(',');
  bench->add_option("--repeat", repeat, "Repetitions (at least 3; median reported)");
  bench->add_option("--chunk-size", chunk, "Bytes per frame (default: whole file)");
  bench->add_flag("--csv", csv, "Emit CSV");
  bench->add_flag("--parallel", parallel, "Decompress frames in parallel");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*compress) return run_compress(input, output, sel, version, chunk);
    if (*decompress) return run_decompress(input, output);
    if (*inspect) return run_inspect(input);
    if (*train) {
      if (sel.profile.empty() && sel.config.empty()) sel.profile = "csv";
      return run_train(samples_dir, prefix, sel, topt);
    }
    if (*bench) return run_benchmark(bench_inputs, bench_profiles, repeat, chunk, csv, parallel);
  } catch (const Failure& f) {
    std::fprintf(stderr, "graphpress: %s\n", f.message.c_str());
    return f.exit_code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "graphpress: internal error: %s\n", e.what());
    return kInternal;
  }
  return kUsage;
}
