// Copyright 2026 the phclust authors
// SPDX-License-Identifier: Apache-2.0

#include "phclust/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <unordered_map>

namespace phclust {

namespace {

// 2D hash grid for fixed-radius neighbor queries.
class Grid2 {
 public:
  Grid2(const std::vector<Vec2>& pts, float cell) : pts_(pts), cell_(cell) {
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(pts.size()); ++i) {
      cells_[key(pts[i].x, pts[i].y)].push_back(i);
    }
  }

  // indices within radius of (x, y), ascending
  void query(double x, double y, double radius, std::vector<std::int32_t>& out) const {
    out.clear();
    const double r2 = radius * radius;
    const std::int64_t cx0 = coord(x - radius), cx1 = coord(x + radius);
    const std::int64_t cy0 = coord(y - radius), cy1 = coord(y + radius);
    for (std::int64_t cx = cx0; cx <= cx1; ++cx) {
      for (std::int64_t cy = cy0; cy <= cy1; ++cy) {
        auto it = cells_.find(pack(cx, cy));
        if (it == cells_.end()) continue;
        for (std::int32_t i : it->second) {
          const double dx = pts_[i].x - x;
          const double dy = pts_[i].y - y;
          if (dx * dx + dy * dy <= r2) out.push_back(i);
        }
      }
    }
    std::sort(out.begin(), out.end());
  }

 private:
  std::int64_t coord(double v) const {
    return static_cast<std::int64_t>(std::floor(v / cell_));
  }
  static std::int64_t pack(std::int64_t cx, std::int64_t cy) {
    return (cx << 32) ^ (cy & 0xffffffffll);
  }
  std::int64_t key(double x, double y) const { return pack(coord(x), coord(y)); }

  const std::vector<Vec2>& pts_;
  float cell_;
  std::unordered_map<std::int64_t, std::vector<std::int32_t>> cells_;
};

}  // namespace

std::vector<std::int32_t> mean_shift(const std::vector<Vec2>& points, float bandwidth,
                                     int max_iter, float tol) {
  if (!(bandwidth > 0.f)) {
    throw std::invalid_argument("mean_shift: bandwidth must be positive");
  }
  const std::size_t m = points.size();
  std::vector<std::int32_t> labels(m, kNoise);
  if (m == 0) return labels;

  Grid2 grid(points, bandwidth);
  std::vector<Vec2> modes(m);
  std::vector<std::int32_t> nbrs;

  for (std::size_t i = 0; i < m; ++i) {
    double x = points[i].x, y = points[i].y;
    for (int it = 0; it < max_iter; ++it) {
      grid.query(x, y, bandwidth, nbrs);
      double sx = 0.0, sy = 0.0;
      for (std::int32_t j : nbrs) {
        sx += points[j].x;
        sy += points[j].y;
      }
      const double nx = sx / nbrs.size();
      const double ny = sy / nbrs.size();
      const double shift = std::hypot(nx - x, ny - y);
      x = nx;
      y = ny;
      if (shift < tol) break;
    }
    modes[i] = {static_cast<float>(x), static_cast<float>(y)};
  }

  // merge converged modes within bandwidth/2; the first point (ascending
  // index) to claim a region defines its cluster
  std::vector<Vec2> cluster_modes;
  const double merge_r = 0.5 * bandwidth;
  for (std::size_t i = 0; i < m; ++i) {
    std::int32_t assigned = kNoise;
    for (std::size_t c = 0; c < cluster_modes.size(); ++c) {
      if (std::hypot(static_cast<double>(modes[i].x) - cluster_modes[c].x,
                     static_cast<double>(modes[i].y) - cluster_modes[c].y) <= merge_r) {
        assigned = static_cast<std::int32_t>(c);
        break;
      }
    }
    if (assigned == kNoise) {
      assigned = static_cast<std::int32_t>(cluster_modes.size());
      cluster_modes.push_back(modes[i]);
    }
    labels[i] = assigned;
  }
  return labels;
}

std::vector<std::int32_t> dbscan(const std::vector<Vec2>& points, float eps,
                                 int min_pts) {
  if (!(eps > 0.f)) throw std::invalid_argument("dbscan: eps must be positive");
  if (min_pts < 1) throw std::invalid_argument("dbscan: min_pts must be >= 1");

  const std::size_t m = points.size();
  constexpr std::int32_t kUnvisited = -2;
  std::vector<std::int32_t> labels(m, kUnvisited);
  if (m == 0) return {};

  Grid2 grid(points, eps);
  std::vector<std::int32_t> nbrs, seed_nbrs;
  std::int32_t next_cluster = 0;

  for (std::size_t i = 0; i < m; ++i) {
    if (labels[i] != kUnvisited) continue;
    grid.query(points[i].x, points[i].y, eps, nbrs);
    if (static_cast<int>(nbrs.size()) < min_pts) {
      labels[i] = kNoise;
      continue;
    }
    const std::int32_t cluster = next_cluster++;
    labels[i] = cluster;
    std::deque<std::int32_t> queue(nbrs.begin(), nbrs.end());
    while (!queue.empty()) {
      const std::int32_t j = queue.front();
      queue.pop_front();
      if (labels[j] == kNoise) labels[j] = cluster;  // border point
      if (labels[j] != kUnvisited) continue;
      labels[j] = cluster;
      grid.query(points[j].x, points[j].y, eps, seed_nbrs);
      if (static_cast<int>(seed_nbrs.size()) >= min_pts) {
        queue.insert(queue.end(), seed_nbrs.begin(), seed_nbrs.end());
      }
    }
  }
  return labels;
}

}  // namespace phclust
