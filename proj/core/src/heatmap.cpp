// Copyright 2026 the phclust authors
// SPDX-License-Identifier: Apache-2.0

#include "phclust/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace phclust {

std::uint64_t PseudoImage::total_count() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

PseudoImage build_pseudo_image(const std::vector<Vec2>& shifted,
                               const std::vector<std::uint16_t>& classes,
                               const ClassTable& table, const GridConfig& cfg) {
  cfg.validate();
  if (shifted.size() != classes.size()) {
    throw std::invalid_argument("build_pseudo_image: positions/classes size mismatch");
  }
  PseudoImage img;
  img.size = cfg.bev_size();
  img.channels = table.num_thing_channels();
  img.cell = cfg.bev_cell;
  img.extent = cfg.bev_extent;
  img.channel_class.resize(img.channels);
  for (int ch = 0; ch < img.channels; ++ch) {
    img.channel_class[ch] = table.channel_class(ch);
  }
  img.counts.assign(static_cast<std::size_t>(img.size) * img.size * img.channels, 0);

  for (std::size_t i = 0; i < shifted.size(); ++i) {
    const Vec2& p = shifted[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw std::invalid_argument("build_pseudo_image: non-finite position");
    }
    const int ch = table.channel_of(classes[i]);
    const int col = static_cast<int>(std::floor((p.x + cfg.bev_extent) / cfg.bev_cell));
    const int row = static_cast<int>(std::floor((p.y + cfg.bev_extent) / cfg.bev_cell));
    if (row < 0 || row >= img.size || col < 0 || col >= img.size) {
      ++img.overflow;
      continue;
    }
    ++img.counts[(static_cast<std::size_t>(row) * img.size + col) * img.channels + ch];
  }
  return img;
}

Heatmap class_agnostic(const PseudoImage& img) {
  Heatmap hm;
  hm.size = img.size;
  hm.cell = img.cell;
  hm.extent = img.extent;
  hm.scores.assign(static_cast<std::size_t>(img.size) * img.size, 0);
  for (std::size_t cell = 0; cell < hm.scores.size(); ++cell) {
    std::uint32_t s = 0;
    for (int ch = 0; ch < img.channels; ++ch) {
      s += img.counts[cell * img.channels + ch];
    }
    hm.scores[cell] = s;
  }
  return hm;
}

CenterSet extract_centers(const Heatmap& hm, const GridConfig& cfg) {
  cfg.validate();
  const int n = hm.size;
  const int rad = cfg.maxpool_window / 2;
  CenterSet out;

  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const std::uint32_t score = hm.at(r, c);
      if (score < cfg.min_center_score) continue;
      // window shrinks at the boundary
      const int r0 = std::max(0, r - rad), r1 = std::min(n - 1, r + rad);
      const int c0 = std::max(0, c - rad), c1 = std::min(n - 1, c + rad);
      bool is_center = true;
      for (int wr = r0; wr <= r1 && is_center; ++wr) {
        for (int wc = c0; wc <= c1; ++wc) {
          const std::uint32_t s = hm.at(wr, wc);
          if (s > score || (s == score && (wr < r || (wr == r && wc < c)))) {
            is_center = false;
            break;
          }
        }
      }
      if (is_center) {
        Center center;
        center.row = r;
        center.col = c;
        center.score = score;
        center.xy = {(c + 0.5f) * hm.cell - hm.extent, (r + 0.5f) * hm.cell - hm.extent};
        out.push_back(center);
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Center& a, const Center& b) {
    return a.score > b.score;  // stable keeps row-major order inside each score
  });
  return out;
}

}  // namespace phclust
