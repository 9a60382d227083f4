// Copyright 2026 the phclust authors
// SPDX-License-Identifier: Apache-2.0

#include "phclust/knn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace phclust {

namespace {

double sqdist(const Vec3& a, const Vec3& b) {
  const double dx = static_cast<double>(a.x) - b.x;
  const double dy = static_cast<double>(a.y) - b.y;
  const double dz = static_cast<double>(a.z) - b.z;
  return dx * dx + dy * dy + dz * dz;
}

struct Candidate {
  double d2;
  std::int32_t idx;
  bool operator<(const Candidate& o) const {
    return d2 != o.d2 ? d2 < o.d2 : idx < o.idx;
  }
};

std::vector<std::int32_t> select_k(std::vector<Candidate>& cands, int k) {
  std::partial_sort(cands.begin(), cands.begin() + k, cands.end());
  std::vector<std::int32_t> row(k);
  for (int j = 0; j < k; ++j) row[j] = cands[j].idx;
  return row;
}

std::vector<std::vector<std::int32_t>> knn_brute(const std::vector<Vec3>& pts, int k) {
  const std::int32_t m = static_cast<std::int32_t>(pts.size());
  std::vector<std::vector<std::int32_t>> out(m);
  std::vector<Candidate> cands(m);
  for (std::int32_t i = 0; i < m; ++i) {
    for (std::int32_t j = 0; j < m; ++j) {
      cands[j] = {sqdist(pts[i], pts[j]), j};
    }
    out[i] = select_k(cands, k);
  }
  return out;
}

struct CellKey {
  std::int64_t key;
  bool operator==(const CellKey& o) const { return key == o.key; }
};

struct CellHash {
  std::size_t operator()(const CellKey& c) const {
    return std::hash<std::int64_t>{}(c.key);
  }
};

CellKey cell_of(const Vec3& p, float cell) {
  const std::int64_t cx = static_cast<std::int64_t>(std::floor(p.x / cell));
  const std::int64_t cy = static_cast<std::int64_t>(std::floor(p.y / cell));
  const std::int64_t cz = static_cast<std::int64_t>(std::floor(p.z / cell));
  // pack 21 bits per axis
  const std::int64_t mask = (1ll << 21) - 1;
  return {((cx & mask) << 42) | ((cy & mask) << 21) | (cz & mask)};
}

// Uniform hash grid with ring-expansion search. Cell size is set from the
// bounding box so a cell holds a handful of points on average.
std::vector<std::vector<std::int32_t>> knn_grid(const std::vector<Vec3>& pts, int k) {
  const std::int32_t m = static_cast<std::int32_t>(pts.size());

  Vec3 lo = pts[0], hi = pts[0];
  for (const Vec3& p : pts) {
    lo.x = std::min(lo.x, p.x); lo.y = std::min(lo.y, p.y); lo.z = std::min(lo.z, p.z);
    hi.x = std::max(hi.x, p.x); hi.y = std::max(hi.y, p.y); hi.z = std::max(hi.z, p.z);
  }
  const double vol =
      std::max(1e-9, (double(hi.x) - lo.x) * (double(hi.y) - lo.y) *
                         std::max(1e-3, double(hi.z) - lo.z));
  // target roughly k points per cell neighborhood
  float cell = static_cast<float>(std::cbrt(vol / m * std::max(1, k)));
  if (!(cell > 0.f) || !std::isfinite(cell)) cell = 1.f;

  std::unordered_map<CellKey, std::vector<std::int32_t>, CellHash> grid;
  grid.reserve(static_cast<std::size_t>(m));
  for (std::int32_t i = 0; i < m; ++i) {
    grid[cell_of(pts[i], cell)].push_back(i);
  }

  std::vector<std::vector<std::int32_t>> out(m);
  std::vector<Candidate> cands;
  for (std::int32_t i = 0; i < m; ++i) {
    const Vec3& p = pts[i];
    const std::int64_t bx = static_cast<std::int64_t>(std::floor(p.x / cell));
    const std::int64_t by = static_cast<std::int64_t>(std::floor(p.y / cell));
    const std::int64_t bz = static_cast<std::int64_t>(std::floor(p.z / cell));
    const std::int64_t mask = (1ll << 21) - 1;

    cands.clear();
    for (int ring = 0;; ++ring) {
      // gather the new shell of cells at Chebyshev radius `ring`
      for (std::int64_t dx = -ring; dx <= ring; ++dx) {
        for (std::int64_t dy = -ring; dy <= ring; ++dy) {
          for (std::int64_t dz = -ring; dz <= ring; ++dz) {
            if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) != ring) continue;
            const CellKey key{(((bx + dx) & mask) << 42) | (((by + dy) & mask) << 21) |
                              ((bz + dz) & mask)};
            auto it = grid.find(key);
            if (it == grid.end()) continue;
            for (std::int32_t j : it->second) {
              cands.push_back({sqdist(p, pts[j]), j});
            }
          }
        }
      }
      if (static_cast<int>(cands.size()) >= k) {
        // the k-th candidate is only final once the shell distance exceeds it
        std::partial_sort(cands.begin(), cands.begin() + k, cands.end());
        const double safe = static_cast<double>(ring) * cell;
        if (cands[k - 1].d2 <= safe * safe || ring > 1024) {
          break;
        }
      }
      if (ring > 2048) {
        throw std::runtime_error("knn_indices: hash grid search failed to close");
      }
    }
    std::vector<std::int32_t> row(k);
    for (int j = 0; j < k; ++j) row[j] = cands[j].idx;
    out[i] = std::move(row);
  }
  return out;
}

}  // namespace

std::vector<std::vector<std::int32_t>> knn_indices(const std::vector<Vec3>& positions,
                                                   int k) {
  if (k < 1) throw std::invalid_argument("knn_indices: k must be positive");
  const std::int32_t m = static_cast<std::int32_t>(positions.size());
  if (m == 0) return {};
  if (m < k) {
    // pad by repeating the query's own index so downstream shapes hold
    auto base = knn_brute(positions, m);
    for (std::int32_t i = 0; i < m; ++i) {
      base[i].resize(k, i);
    }
    return base;
  }
  if (m < 256) return knn_brute(positions, k);
  return knn_grid(positions, k);
}

}  // namespace phclust
