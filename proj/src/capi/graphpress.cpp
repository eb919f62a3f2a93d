// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

#include "graphpress/graphpress.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "format/frame.hpp"
#include "profiles/profiles.hpp"
#include "trainer/trainer.hpp"

struct gp_compressor {
  gp::Compressor compressor;
};

struct gp_train_result {
  gp::TrainResult result;
};

namespace {

thread_local std::string last_error;

gp_status status_of(gp::ErrorCode code) { return static_cast<gp_status>(static_cast<int>(code)); }

template <typename F>
gp_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return GP_OK;
  } catch (const gp::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return GP_ERR_LIMIT;
  } catch (const std::exception& e) {
    last_error = std::string("internal error: ") + e.what();
    return GP_ERR_INTERNAL;
  } catch (...) {
    last_error = "internal error";
    return GP_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) gp::fail(gp::ErrorCode::Usage, what);
}

void fill(gp_buffer* out, const void* data, size_t size) {
  out->data = nullptr;
  out->size = 0;
  if (size == 0) return;
  out->data = static_cast<uint8_t*>(std::malloc(size));
  if (out->data == nullptr) throw std::bad_alloc();
  std::memcpy(out->data, data, size);
  out->size = size;
}

}  // namespace

extern "C" {

const char* gp_version_string(void) { return "0.1.0"; }

const char* gp_status_name(gp_status status) {
  if (status == GP_OK) return "ok";
  if (status < GP_ERR_USAGE || status > GP_ERR_INTERNAL) return "unknown";
  return gp::error_code_name(static_cast<gp::ErrorCode>(status));
}

const char* gp_last_error(void) { return last_error.c_str(); }

unsigned gp_min_format_version(void) { return gp::kMinFormatVersion; }
unsigned gp_max_format_version(void) { return gp::kMaxFormatVersion; }

void gp_buffer_free(gp_buffer* buffer) {
  if (buffer == nullptr) return;
  std::free(buffer->data);
  buffer->data = nullptr;
  buffer->size = 0;
}

gp_status gp_compressor_from_profile(const char* name, gp_compressor** out) {
  return guarded([&] {
    require(name != nullptr && out != nullptr, "profile name and output handle are required");
    *out = new gp_compressor{gp::Compressor(gp::profile_config(name))};
  });
}

gp_status gp_compressor_from_csv(uint8_t delimiter, uint8_t quote, int header, gp_compressor** out) {
  return guarded([&] {
    require(out != nullptr, "output handle is required");
    require(delimiter != quote && delimiter != '\n' && delimiter != '\r',
            "delimiter must differ from the quote and newline bytes");
    *out = new gp_compressor{gp::Compressor(gp::csv_config({delimiter, quote, header != 0}))};
  });
}

gp_status gp_compressor_from_config(const char* text, size_t size, gp_compressor** out) {
  return guarded([&] {
    require(out != nullptr && (text != nullptr || size == 0), "config text and output handle are required");
    *out = new gp_compressor{gp::Compressor(gp::deserialize_compressor(std::string_view(text, size)))};
  });
}

void gp_compressor_free(gp_compressor* compressor) { delete compressor; }

unsigned gp_compressor_format_version(const gp_compressor* compressor) {
  return compressor == nullptr ? 0 : compressor->compressor.config().format_version;
}

gp_status gp_compressor_config(const gp_compressor* compressor, gp_buffer* out) {
  return guarded([&] {
    require(compressor != nullptr && out != nullptr, "compressor and output buffer are required");
    std::string text = gp::serialize_compressor(compressor->compressor.config());
    fill(out, text.data(), text.size());
  });
}

gp_status gp_compressor_check_version(const gp_compressor* compressor, unsigned format_version) {
  return guarded([&] {
    require(compressor != nullptr, "compressor is required");
    compressor->compressor.check_format_version(format_version);
  });
}

gp_status gp_compress(const gp_compressor* compressor, const uint8_t* src, size_t size, unsigned format_version,
                      gp_buffer* out) {
  return guarded([&] {
    require(compressor != nullptr && out != nullptr && (src != nullptr || size == 0),
            "compressor, input and output buffer are required");
    out->data = nullptr;
    out->size = 0;
    const unsigned version = format_version == 0 ? compressor->compressor.config().format_version : format_version;
    gp::Bytes frame = compressor->compressor.compress(gp::ByteView(src, size), version);
    fill(out, frame.data(), frame.size());
  });
}

gp_status gp_decompress(const uint8_t* src, size_t size, uint64_t max_output, gp_buffer* out, size_t* consumed) {
  return guarded([&] {
    require(out != nullptr && (src != nullptr || size == 0), "input and output buffer are required");
    out->data = nullptr;
    out->size = 0;
    gp::ReadResult r = gp::read_frame(gp::ByteView(src, size));
    gp::DecodeOptions options;
    if (max_output != 0) options.max_output_bytes = max_output;
    gp::Stream s = gp::decompress_trace(r.frame.trace, std::move(r.frame.stored), gp::CodecRegistry::standard(),
                                        options.max_output_bytes);
    fill(out, s.payload.data(), s.payload.size());
    if (consumed != nullptr) *consumed = r.consumed;
  });
}

gp_status gp_inspect(const uint8_t* src, size_t size, gp_buffer* out, size_t* consumed) {
  return guarded([&] {
    require(out != nullptr && (src != nullptr || size == 0), "input and output buffer are required");
    gp::ReadResult r = gp::read_frame(gp::ByteView(src, size));
    std::string text = gp::inspect(r.frame, r.consumed);
    fill(out, text.data(), text.size());
    if (consumed != nullptr) *consumed = r.consumed;
  });
}

void gp_train_options_default(gp_train_options* options) {
  if (options == nullptr) return;
  gp::TrainOptions d;
  options->population = d.evolve.population;
  options->generations = d.evolve.generations;
  options->tournament = d.evolve.tournament;
  options->mutation_rate = d.evolve.mutation_rate;
  options->crossover_rate = d.evolve.crossover_rate;
  options->seed = d.evolve.seed;
  options->eval_bytes = d.evolve.eval_bytes;
  options->capacity = d.capacity;
}

gp_status gp_train(const gp_compressor* base, const gp_buffer* samples, size_t count, const gp_train_options* options,
                   gp_train_result** out) {
  return guarded([&] {
    require(base != nullptr && out != nullptr && (samples != nullptr || count == 0),
            "base compressor, samples and output handle are required");
    gp_train_options o;
    gp_train_options_default(&o);
    if (options != nullptr) o = *options;
    require(o.population >= 2 && o.tournament >= 1 && o.capacity >= 1 && o.eval_bytes >= 1,
            "population must be at least 2; tournament, capacity and eval_bytes at least 1");
    gp::TrainOptions t;
    t.evolve.population = o.population;
    t.evolve.generations = o.generations;
    t.evolve.tournament = o.tournament;
    t.evolve.mutation_rate = o.mutation_rate;
    t.evolve.crossover_rate = o.crossover_rate;
    t.evolve.seed = o.seed;
    t.evolve.eval_bytes = o.eval_bytes;
    t.capacity = o.capacity;
    std::vector<gp::Bytes> files;
    for (size_t i = 0; i < count; ++i) files.emplace_back(samples[i].data, samples[i].data + samples[i].size);
    *out = new gp_train_result{gp::train(files, base->compressor.config(), t)};
  });
}

size_t gp_train_result_count(const gp_train_result* result) {
  return result == nullptr ? 0 : result->result.configs.size();
}

gp_status gp_train_result_config(const gp_train_result* result, size_t index, gp_buffer* out) {
  return guarded([&] {
    require(result != nullptr && out != nullptr, "result and output buffer are required");
    require(index < result->result.configs.size(), "config index out of range");
    std::string text = gp::serialize_compressor(result->result.configs[index].config);
    fill(out, text.data(), text.size());
  });
}

gp_status gp_train_result_report(const gp_train_result* result, gp_buffer* out) {
  return guarded([&] {
    require(result != nullptr && out != nullptr, "result and output buffer are required");
    std::string text = result->result.report();
    fill(out, text.data(), text.size());
  });
}

size_t gp_train_result_warning_count(const gp_train_result* result) {
  return result == nullptr ? 0 : result->result.warnings.size();
}

const char* gp_train_result_warning(const gp_train_result* result, size_t index) {
  if (result == nullptr || index >= result->result.warnings.size()) return nullptr;
  return result->result.warnings[index].c_str();
}

void gp_train_result_free(gp_train_result* result) { delete result; }

}  // extern "C"
