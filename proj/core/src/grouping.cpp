// Copyright 2026 the phclust authors
// SPDX-License-Identifier: Apache-2.0

#include "phclust/grouping.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace phclust {

GridClassMap grid_class_majority(const PseudoImage& img, const GridConfig& cfg) {
  cfg.validate();
  const int n = img.size;
  const int nc = img.channels;
  const int rad = cfg.avgpool_window / 2;

  GridClassMap map;
  map.size = n;
  map.classes.assign(static_cast<std::size_t>(n) * n, kIgnoreClass);
  if (nc == 0) return map;

  // per-channel 2D prefix sums: sums[(r, c, ch)] over counts[0..r)x[0..c)
  const std::size_t stride = static_cast<std::size_t>(n + 1);
  std::vector<std::uint64_t> sums(stride * stride * nc, 0);
  auto sum_at = [&](int r, int c, int ch) -> std::uint64_t& {
    return sums[(static_cast<std::size_t>(r) * stride + c) * nc + ch];
  };
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      for (int ch = 0; ch < nc; ++ch) {
        sum_at(r + 1, c + 1, ch) = img.at(r, c, ch) + sum_at(r, c + 1, ch) +
                                   sum_at(r + 1, c, ch) - sum_at(r, c, ch);
      }
    }
  }

  for (int r = 0; r < n; ++r) {
    const int r0 = std::max(0, r - rad), r1 = std::min(n - 1, r + rad);
    for (int c = 0; c < n; ++c) {
      const int c0 = std::max(0, c - rad), c1 = std::min(n - 1, c + rad);
      std::uint64_t best = 0;
      int best_ch = -1;
      for (int ch = 0; ch < nc; ++ch) {
        const std::uint64_t cnt = sum_at(r1 + 1, c1 + 1, ch) - sum_at(r0, c1 + 1, ch) -
                                  sum_at(r1 + 1, c0, ch) + sum_at(r0, c0, ch);
        if (cnt > best) {  // channels ascend in class id, so ties keep the smaller
          best = cnt;
          best_ch = ch;
        }
      }
      if (best_ch >= 0) {
        map.classes[static_cast<std::size_t>(r) * n + c] = img.channel_class[best_ch];
      }
    }
  }
  return map;
}

std::uint16_t window_class_majority(const PseudoImage& img, const GridConfig& cfg,
                                    int row, int col) {
  cfg.validate();
  if (row < 0 || row >= img.size || col < 0 || col >= img.size) {
    throw std::invalid_argument("window_class_majority: cell outside the image");
  }
  const int rad = cfg.avgpool_window / 2;
  const int r0 = std::max(0, row - rad), r1 = std::min(img.size - 1, row + rad);
  const int c0 = std::max(0, col - rad), c1 = std::min(img.size - 1, col + rad);
  std::uint64_t best = 0;
  int best_ch = -1;
  for (int ch = 0; ch < img.channels; ++ch) {
    std::uint64_t cnt = 0;
    for (int r = r0; r <= r1; ++r) {
      for (int c = c0; c <= c1; ++c) {
        cnt += img.at(r, c, ch);
      }
    }
    if (cnt > best) {  // channels ascend in class id, so ties keep the smaller
      best = cnt;
      best_ch = ch;
    }
  }
  return best_ch >= 0 ? img.channel_class[best_ch] : kIgnoreClass;
}

float radius_for_class(std::uint16_t cls, const ClassTable& table) {
  if (!table.is_thing(cls)) {
    throw std::invalid_argument("radius_for_class: class " + std::to_string(cls) +
                                " is not a thing class");
  }
  const ClassSize& s = table.avg_size(cls);
  return std::min(s.width, s.length);
}

namespace {

struct UnionFind {
  std::vector<std::int32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::int32_t find(std::int32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::int32_t a, std::int32_t b) {
    // the smaller index (earlier in traversal order, highest score) stays root
    const std::int32_t ra = find(a), rb = find(b);
    if (ra == rb) return;
    if (ra < rb) {
      parent[rb] = ra;
    } else {
      parent[ra] = rb;
    }
  }
};

}  // namespace

CenterGroups group_centers(const CenterSet& centers, const GridClassMap& classmap,
                           const ClassTable& table) {
  const std::size_t n = centers.size();
  CenterGroups out;
  out.group_of.resize(n);
  out.center_class.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Center& ctr = centers[i];
    if (ctr.row < 0 || ctr.row >= classmap.size || ctr.col < 0 ||
        ctr.col >= classmap.size) {
      throw std::invalid_argument("group_centers: center outside the class map");
    }
    out.center_class[i] = classmap.at(ctr.row, ctr.col);
  }

  UnionFind uf(n);
  for (std::size_t b = 0; b < n; ++b) {
    const std::uint16_t cls = out.center_class[b];
    if (cls == kIgnoreClass) continue;  // singleton
    const float r_b = radius_for_class(cls, table);
    for (std::size_t t = 0; t < n; ++t) {
      if (t == b || out.center_class[t] != cls) continue;
      const double dx = static_cast<double>(centers[b].xy.x) - centers[t].xy.x;
      const double dy = static_cast<double>(centers[b].xy.y) - centers[t].xy.y;
      if (std::sqrt(dx * dx + dy * dy) <= r_b) {
        uf.unite(static_cast<std::int32_t>(b), static_cast<std::int32_t>(t));
      }
    }
  }

  // group ids in order of the representative's CenterSet position
  std::vector<std::int32_t> group_id(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::int32_t root = uf.find(static_cast<std::int32_t>(i));
    if (group_id[root] < 0) {
      group_id[root] = static_cast<std::int32_t>(out.representative.size());
      out.representative.push_back(root);
    }
    out.group_of[i] = group_id[root];
  }
  return out;
}

}  // namespace phclust
