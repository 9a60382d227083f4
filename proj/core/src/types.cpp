// Copyright 2026 the phclust authors
// SPDX-License-Identifier: Apache-2.0

#include "phclust/types.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace phclust {

PointCloud::PointCloud(std::vector<Vec3> xyz, std::vector<float> intensity)
    : xyz_(std::move(xyz)), intensity_(std::move(intensity)) {
  for (std::size_t i = 0; i < xyz_.size(); ++i) {
    const Vec3& p = xyz_[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
      throw std::invalid_argument("PointCloud: non-finite coordinate at point " +
                                  std::to_string(i));
    }
  }
  if (!intensity_.empty() && intensity_.size() != xyz_.size()) {
    throw std::invalid_argument("PointCloud: intensity length " +
                                std::to_string(intensity_.size()) +
                                " != point count " + std::to_string(xyz_.size()));
  }
}

void PanopticLabeling::validate(std::int64_t n) const {
  if (semantic.size() != instance.size()) {
    throw std::invalid_argument("PanopticLabeling: semantic length " +
                                std::to_string(semantic.size()) +
                                " != instance length " + std::to_string(instance.size()));
  }
  if (n >= 0 && semantic.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("PanopticLabeling: length " +
                                std::to_string(semantic.size()) +
                                " != expected point count " + std::to_string(n));
  }
}

ClassTable::ClassTable(std::set<std::uint16_t> thing, std::set<std::uint16_t> stuff,
                       std::map<std::uint16_t, ClassSize> avg_size)
    : thing_(std::move(thing)), stuff_(std::move(stuff)), sizes_(std::move(avg_size)) {
  if (thing_.count(kIgnoreClass) || stuff_.count(kIgnoreClass)) {
    throw std::invalid_argument("ClassTable: the ignore class 0 cannot be thing or stuff");
  }
  for (std::uint16_t c : thing_) {
    if (stuff_.count(c)) {
      throw std::invalid_argument("ClassTable: class " + std::to_string(c) +
                                  " is both thing and stuff");
    }
  }
  for (const auto& [c, s] : sizes_) {
    if (!(s.width > 0.f && s.length > 0.f && s.height > 0.f)) {
      throw std::invalid_argument("ClassTable: non-positive avg_size for class " +
                                  std::to_string(c));
    }
  }
  channels_.assign(thing_.begin(), thing_.end());  // std::set iterates sorted
}

const ClassSize& ClassTable::avg_size(std::uint16_t c) const {
  auto it = sizes_.find(c);
  if (it == sizes_.end()) {
    throw std::invalid_argument("ClassTable: no avg_size for class " + std::to_string(c));
  }
  return it->second;
}

int ClassTable::channel_of(std::uint16_t c) const {
  auto it = std::lower_bound(channels_.begin(), channels_.end(), c);
  if (it == channels_.end() || *it != c) {
    throw std::invalid_argument("ClassTable: class " + std::to_string(c) +
                                " is not a thing class");
  }
  return static_cast<int>(it - channels_.begin());
}

void ClassTable::validate_labeling(const PanopticLabeling& labels) const {
  labels.validate();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels.instance[i] != kNoInstance && !is_thing(labels.semantic[i])) {
      throw std::invalid_argument(
          "PanopticLabeling: point " + std::to_string(i) + " has instance " +
          std::to_string(labels.instance[i]) + " but non-thing class " +
          std::to_string(labels.semantic[i]));
    }
  }
}

void GridConfig::validate() const {
  if (!(rho_min >= 0.f && rho_max > rho_min)) {
    throw std::invalid_argument("GridConfig: need 0 <= rho_min < rho_max");
  }
  if (!(z_max > z_min)) {
    throw std::invalid_argument("GridConfig: need z_min < z_max");
  }
  if (n_rho < 1 || n_phi < 1 || n_z < 1) {
    throw std::invalid_argument("GridConfig: cylindrical dims must be >= 1");
  }
  if (!(bev_cell > 0.f)) {
    throw std::invalid_argument("GridConfig: bev_cell must be > 0");
  }
  if (!(bev_extent > 0.f)) {
    throw std::invalid_argument("GridConfig: bev_extent must be > 0");
  }
  if (maxpool_window < 1 || maxpool_window % 2 == 0) {
    throw std::invalid_argument("GridConfig: maxpool_window must be odd and positive");
  }
  if (avgpool_window < 1 || avgpool_window % 2 == 0) {
    throw std::invalid_argument("GridConfig: avgpool_window must be odd and positive");
  }
  if (min_center_score < 1) {
    throw std::invalid_argument("GridConfig: min_center_score must be positive");
  }
}

int GridConfig::bev_size() const {
  return static_cast<int>(std::ceil(2.0 * bev_extent / bev_cell));
}

void validate_offsets(const Offsets& off) {
  for (std::size_t i = 0; i < off.size(); ++i) {
    if (!std::isfinite(off[i].x) || !std::isfinite(off[i].y)) {
      throw std::invalid_argument("Offsets: non-finite entry at " + std::to_string(i));
    }
  }
}

}  // namespace phclust
