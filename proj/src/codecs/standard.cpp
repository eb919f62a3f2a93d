// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

#include "codecs/common.hpp"

namespace gp {

void register_standard_codecs(CodecRegistry& registry) {
  registry.register_codec(make_store_codec());
  registry.register_codec(make_delta_codec());
  registry.register_codec(make_transpose_codec());
  registry.register_codec(make_tokenize_codec());
  registry.register_codec(make_rle_codec());
  registry.register_codec(make_mtf_codec());
  registry.register_codec(make_bitpack_codec());
  registry.register_codec(make_huffman_codec());
  registry.register_codec(make_lz_codec());
  registry.register_codec(make_field_split_codec());
  registry.register_codec(make_concat_codec());
  registry.register_codec(make_interpret_codec());
}

}  // namespace gp
