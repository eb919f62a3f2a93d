// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

// Allocation-free codec kernels. Bindings own buffers and type checks; the
// kernels only transform bytes.

#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "core/bytes.hpp"

namespace gp::kernels {

// `out` must hold in.size() bytes. Modular arithmetic on w-byte lanes.
void delta_encode(ByteView in, unsigned width, uint8_t* out);
void delta_decode(ByteView in, unsigned width, uint8_t* out);

// Rank-major byte transpose of n records of k bytes: out[r*n + i] = in[i*k + r].
void transpose(ByteView in, size_t k, uint8_t* out);
void untranspose(ByteView in, size_t k, uint8_t* out);

void mtf_encode(ByteView in, uint8_t* out);
void mtf_decode(ByteView in, uint8_t* out);

/// Bits needed to represent `max_value` (minimum 1).
unsigned bitpack_width(uint64_t max_value);
size_t bitpack_size(size_t count, unsigned bits);
// LSB-first packing; `out` must hold bitpack_size(count, bits) bytes, zeroed.
void bitpack(std::span<const uint64_t> values, unsigned bits, uint8_t* out);
void bitunpack(ByteView in, unsigned bits, std::span<uint64_t> values);

using CodeLengths = std::array<uint8_t, 256>;
inline constexpr unsigned kHuffmanMaxBits = 15;

/// Optimal length-limited prefix code lengths (package-merge). Symbols with a
/// zero count get length 0. Requires at least two nonzero counts.
CodeLengths huffman_code_lengths(const std::array<uint64_t, 256>& counts, unsigned max_bits);
/// Canonical codes assigned in (length, symbol) order.
std::array<uint16_t, 256> canonical_codes(const CodeLengths& lengths);

/// Worst-case compressed size of lz_compress for n input bytes.
size_t lz_bound(size_t n);
inline constexpr size_t kLzWindow = size_t{1} << 20;
inline constexpr size_t kLzMinMatch = 4;

}  // namespace gp::kernels
