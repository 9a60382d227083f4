// Copyright 2026 the phclust authors
// SPDX-License-Identifier: Apache-2.0

#include "phclust/assignment.hpp"

#include <limits>
#include <map>
#include <stdexcept>

namespace phclust {

InstanceAssignment assign_instances(const std::vector<Vec2>& shifted,
                                    const CenterSet& centers,
                                    const CenterGroups& groups) {
  InstanceAssignment out;
  out.instance.assign(shifted.size(), kNoInstance);
  if (shifted.empty()) return out;
  if (centers.empty()) {
    out.unassigned = shifted.size();
    return out;
  }
  if (groups.group_of.size() != centers.size()) {
    throw std::invalid_argument("assign_instances: groups do not cover the centers");
  }
  for (std::size_t i = 0; i < shifted.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::int32_t best_group = std::numeric_limits<std::int32_t>::max();
    for (std::size_t c = 0; c < centers.size(); ++c) {
      const double dx = static_cast<double>(shifted[i].x) - centers[c].xy.x;
      const double dy = static_cast<double>(shifted[i].y) - centers[c].xy.y;
      const double d2 = dx * dx + dy * dy;
      const std::int32_t g = groups.group_of[c];
      if (d2 < best || (d2 == best && g < best_group)) {
        best = d2;
        best_group = g;
      }
    }
    out.instance[i] = static_cast<std::uint32_t>(best_group) + 1;
  }
  return out;
}

PanopticLabeling fuse_panoptic(const std::vector<std::uint16_t>& semantic,
                               const std::vector<std::uint32_t>& instance,
                               const ClassTable& table) {
  if (semantic.size() != instance.size()) {
    throw std::invalid_argument("fuse_panoptic: semantic/instance size mismatch");
  }
  // per-instance class histogram
  std::map<std::uint32_t, std::map<std::uint16_t, std::int64_t>> votes;
  for (std::size_t i = 0; i < semantic.size(); ++i) {
    if (instance[i] != kNoInstance) {
      ++votes[instance[i]][semantic[i]];
    }
  }
  std::map<std::uint32_t, std::uint16_t> winner;
  for (const auto& [inst, hist] : votes) {
    std::uint16_t best_cls = kIgnoreClass;
    std::int64_t best_count = 0;
    for (const auto& [cls, count] : hist) {  // ascending class id, ties keep smaller
      if (count > best_count) {
        best_cls = cls;
        best_count = count;
      }
    }
    winner[inst] = best_cls;
  }

  PanopticLabeling out;
  out.semantic = semantic;
  out.instance = instance;
  for (std::size_t i = 0; i < semantic.size(); ++i) {
    if (instance[i] == kNoInstance) continue;
    const std::uint16_t cls = winner[instance[i]];
    out.semantic[i] = cls;
    if (!table.is_thing(cls)) {
      out.instance[i] = kNoInstance;  // the instance voted itself into stuff
    }
  }
  return out;
}

}  // namespace phclust
