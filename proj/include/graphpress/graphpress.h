/* Copyright 2026 The graphpress Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * graphpress C API.
 *
 * Every function returning gp_status leaves a thread-local message available
 * through gp_last_error() when it fails. Buffers returned by the library are
 * released with gp_buffer_free(). Handles are immutable after creation and
 * may be shared between threads.
 */

#ifndef GRAPHPRESS_GRAPHPRESS_H_
#define GRAPHPRESS_GRAPHPRESS_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GP_API __declspec(dllexport)
#else
#define GP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gp_status {
  GP_OK = 0,
  GP_ERR_USAGE = 1,
  GP_ERR_TYPE = 2,
  GP_ERR_PARAM = 3,
  GP_ERR_VERSION = 4,
  GP_ERR_FORMAT = 5,
  GP_ERR_CORRUPT = 6,
  GP_ERR_EXPANSION = 7,
  GP_ERR_NOT_FOUND = 8,
  GP_ERR_CONFIG = 9,
  GP_ERR_LIMIT = 10,
  GP_ERR_INTERNAL = 11
} gp_status;

typedef struct gp_buffer {
  uint8_t* data;
  size_t size;
} gp_buffer;

typedef struct gp_compressor gp_compressor;
typedef struct gp_train_result gp_train_result;

GP_API const char* gp_version_string(void);
GP_API const char* gp_status_name(gp_status status);
/* Message of the last failure on this thread; never NULL. */
GP_API const char* gp_last_error(void);

GP_API unsigned gp_min_format_version(void);
GP_API unsigned gp_max_format_version(void);

GP_API void gp_buffer_free(gp_buffer* buffer);

/* Built-in profiles: "generic", "sao", "csv". */
GP_API gp_status gp_compressor_from_profile(const char* name, gp_compressor** out);
/* CSV profile with a custom dialect. */
GP_API gp_status gp_compressor_from_csv(uint8_t delimiter, uint8_t quote, int header, gp_compressor** out);
/* Serialized compressor config (.zlc text). */
GP_API gp_status gp_compressor_from_config(const char* text, size_t size, gp_compressor** out);
GP_API void gp_compressor_free(gp_compressor* compressor);

/* Format version the config asks for. */
GP_API unsigned gp_compressor_format_version(const gp_compressor* compressor);
/* Canonical config text. */
GP_API gp_status gp_compressor_config(const gp_compressor* compressor, gp_buffer* out);
/* Fails with GP_ERR_VERSION when the compressor can select a codec newer
 * than format_version. */
GP_API gp_status gp_compressor_check_version(const gp_compressor* compressor, unsigned format_version);

/* Compresses src into one frame. format_version 0 uses the config's. */
GP_API gp_status gp_compress(const gp_compressor* compressor, const uint8_t* src, size_t size, unsigned format_version,
                             gp_buffer* out);

/* Decodes the frame at the start of src. No compressor is needed. consumed
 * (optional) receives the frame length so concatenated frames can be walked.
 * max_output 0 means the library default. */
GP_API gp_status gp_decompress(const uint8_t* src, size_t size, uint64_t max_output, gp_buffer* out,
                               size_t* consumed);

/* Text dump of the frame at the start of src. */
GP_API gp_status gp_inspect(const uint8_t* src, size_t size, gp_buffer* out, size_t* consumed);

typedef struct gp_train_options {
  size_t population;
  size_t generations;
  size_t tournament;
  double mutation_rate;
  double crossover_rate;
  uint64_t seed;
  size_t eval_bytes;
  size_t capacity;
} gp_train_options;

GP_API void gp_train_options_default(gp_train_options* options);

/* Trains configs for the base compressor's parser from sample files. */
GP_API gp_status gp_train(const gp_compressor* base, const gp_buffer* samples, size_t count,
                          const gp_train_options* options, gp_train_result** out);
GP_API size_t gp_train_result_count(const gp_train_result* result);
/* Config i (smallest first) as .zlc text. */
GP_API gp_status gp_train_result_config(const gp_train_result* result, size_t index, gp_buffer* out);
GP_API gp_status gp_train_result_report(const gp_train_result* result, gp_buffer* out);
GP_API size_t gp_train_result_warning_count(const gp_train_result* result);
GP_API const char* gp_train_result_warning(const gp_train_result* result, size_t index);
GP_API void gp_train_result_free(gp_train_result* result);

#ifdef __cplusplus
}
#endif

#endif /* GRAPHPRESS_GRAPHPRESS_H_ */
