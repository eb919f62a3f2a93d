// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <limits>
#include <string>
#include <vector>

namespace gp {

/// (compressed size in bytes, compression cost, decompression cost); all
/// minimized.
using Objectives = std::array<double, 3>;

inline constexpr double kInfeasible = std::numeric_limits<double>::infinity();

/// a <= b everywhere and a < b somewhere.
bool dominates(const Objectives& a, const Objectives& b);

struct ParetoPoint {
  std::string genome;  // canonical graph description (or a composite label)
  Objectives objectives{};
  double crowding_distance = 0;
};

/// Non-dominated fronts in rank order; each entry indexes `points`.
std::vector<std::vector<size_t>> non_dominated_sort(const std::vector<Objectives>& points);

/// Crowding distance of each member of `front`. Per objective with a
/// non-zero range, the extremes get infinity and interior points add the
/// normalized gap between their neighbours.
std::vector<double> crowding_distances(const std::vector<Objectives>& points, const std::vector<size_t>& front);

/// Indices of the first front (ties in objectives are kept).
std::vector<size_t> non_dominated(const std::vector<Objectives>& points);

/// Union, drop dominated points and duplicate genomes, then while more than
/// `n` remain remove the point with the lowest crowding distance (lowest
/// index on ties), recomputing after each removal. Per-objective minima are
/// never removed unless they alone exceed `n`.
std::vector<ParetoPoint> merge_pareto(const std::vector<std::vector<ParetoPoint>>& fronts, size_t n);

}  // namespace gp
