// Copyright 2026 the phclust authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PHCLUST_HEATMAP_HPP
#define PHCLUST_HEATMAP_HPP

#include <cstdint>
#include <vector>

#include "phclust/types.hpp"

namespace phclust {

/// Per-class voxel-count BEV tensor. Cell (row, col) covers
/// y in [row*cell - extent, ...), x in [col*cell - extent, ...).
/// Shifted voxels outside the extent land in the overflow tally, never in a
/// clamped cell.
struct PseudoImage {
  int size = 0;                           // H == W
  int channels = 0;                       // number of thing classes
  float cell = 0.2f;                      // m
  float extent = 0.f;                     // half-width, m
  std::vector<std::uint32_t> counts;      // row-major H x W x C
  std::vector<std::uint16_t> channel_class;  // channel -> class id
  std::uint64_t overflow = 0;

  std::uint32_t at(int r, int c, int ch) const {
    return counts[(static_cast<std::size_t>(r) * size + c) * channels + ch];
  }
  std::uint64_t total_count() const;
};

/// Class-agnostic channel sum of a PseudoImage.
struct Heatmap {
  int size = 0;
  float cell = 0.2f;
  float extent = 0.f;
  std::vector<std::uint32_t> scores;  // row-major H x W

  std::uint32_t at(int r, int c) const {
    return scores[static_cast<std::size_t>(r) * size + c];
  }
};

struct Center {
  int row = 0;
  int col = 0;
  std::uint32_t score = 0;
  Vec2 xy;  // BEV cell center, m
};

/// Extracted instance centers, ordered by descending score then row-major.
using CenterSet = std::vector<Center>;

/// Bins each shifted thing voxel into its cartesian heatmap cell and class
/// channel. classes[i] must be a thing class of the table.
PseudoImage build_pseudo_image(const std::vector<Vec2>& shifted,
                               const std::vector<std::uint16_t>& classes,
                               const ClassTable& table, const GridConfig& cfg);

Heatmap class_agnostic(const PseudoImage& img);

/// Window max-pool NMS. A cell is a center iff its score reaches
/// min_center_score, equals the window max, and is the row-major smallest
/// cell attaining that max within the window. Boundary windows shrink.
/// No top-k truncation.
CenterSet extract_centers(const Heatmap& hm, const GridConfig& cfg);

}  // namespace phclust

#endif
