// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

#include "trainer/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace gp {

bool dominates(const Objectives& a, const Objectives& b) {
  bool strict = false;
  for (size_t k = 0; k < a.size(); ++k) {
    if (a[k] > b[k]) return false;
    if (a[k] < b[k]) strict = true;
  }
  return strict;
}

std::vector<std::vector<size_t>> non_dominated_sort(const std::vector<Objectives>& points) {
  const size_t n = points.size();
  std::vector<std::vector<size_t>> dominated_by(n);
  std::vector<size_t> count(n, 0);
  std::vector<std::vector<size_t>> fronts(1);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (dominates(points[i], points[j])) {
        dominated_by[i].push_back(j);
      } else if (dominates(points[j], points[i])) {
        ++count[i];
      }
    }
    if (count[i] == 0) fronts[0].push_back(i);
  }
  while (!fronts.back().empty()) {
    std::vector<size_t> next;
    for (size_t i : fronts.back()) {
      for (size_t j : dominated_by[i]) {
        if (--count[j] == 0) next.push_back(j);
      }
    }
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(next));
  }
  fronts.pop_back();
  return fronts;
}

std::vector<double> crowding_distances(const std::vector<Objectives>& points, const std::vector<size_t>& front) {
  const size_t m = front.size();
  std::vector<double> d(m, 0.0);
  if (m == 0) return d;
  std::vector<size_t> order(m);
  for (size_t k = 0; k < Objectives{}.size(); ++k) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return points[front[a]][k] < points[front[b]][k]; });
    const double lo = points[front[order.front()]][k];
    const double hi = points[front[order.back()]][k];
    if (!(hi > lo) || std::isinf(hi - lo)) continue;
    d[order.front()] = kInfeasible;
    d[order.back()] = kInfeasible;
    for (size_t r = 1; r + 1 < m; ++r) {
      d[order[r]] += (points[front[order[r + 1]]][k] - points[front[order[r - 1]]][k]) / (hi - lo);
    }
  }
  return d;
}

std::vector<size_t> non_dominated(const std::vector<Objectives>& points) {
  std::vector<size_t> out;
  for (size_t i = 0; i < points.size(); ++i) {
    bool dominated = false;
    for (size_t j = 0; j < points.size() && !dominated; ++j) dominated = dominates(points[j], points[i]);
    if (!dominated) out.push_back(i);
  }
  return out;
}

std::vector<ParetoPoint> merge_pareto(const std::vector<std::vector<ParetoPoint>>& fronts, size_t n) {
  std::vector<ParetoPoint> all;
  std::set<std::string> seen;
  for (const auto& f : fronts) {
    for (const ParetoPoint& p : f) {
      if (seen.insert(p.genome).second) all.push_back(p);
    }
  }
  std::vector<Objectives> objs;
  for (const ParetoPoint& p : all) objs.push_back(p.objectives);
  std::vector<ParetoPoint> kept;
  for (size_t i : non_dominated(objs)) kept.push_back(all[i]);

  auto recompute = [&] {
    std::vector<Objectives> o;
    for (const ParetoPoint& p : kept) o.push_back(p.objectives);
    std::vector<size_t> idx(kept.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<double> d = crowding_distances(o, idx);
    for (size_t i = 0; i < kept.size(); ++i) kept[i].crowding_distance = d[i];
  };
  recompute();
  while (kept.size() > std::max<size_t>(n, 1)) {
    size_t worst = 0;
    for (size_t i = 1; i < kept.size(); ++i) {
      if (kept[i].crowding_distance < kept[worst].crowding_distance) worst = i;
    }
    kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(worst));
    recompute();
  }
  return kept;
}

}  // namespace gp
