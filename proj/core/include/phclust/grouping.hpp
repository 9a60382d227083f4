// Copyright 2026 the phclust authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PHCLUST_GROUPING_HPP
#define PHCLUST_GROUPING_HPP

#include <cstdint>
#include <vector>

#include "phclust/heatmap.hpp"
#include "phclust/types.hpp"

namespace phclust {

/// Majority thing class of the avg-pool window around each heatmap cell;
/// kIgnoreClass where the window is empty.
struct GridClassMap {
  int size = 0;
  std::vector<std::uint16_t> classes;  // row-major H x W

  std::uint16_t at(int r, int c) const {
    return classes[static_cast<std::size_t>(r) * size + c];
  }
};

GridClassMap grid_class_majority(const PseudoImage& img, const GridConfig& cfg);

/// Same vote as grid_class_majority, evaluated only at the given cell.
std::uint16_t window_class_majority(const PseudoImage& img, const GridConfig& cfg,
                                    int row, int col);

/// Grouping radius of a thing class: min(width, length) of its average size.
float radius_for_class(std::uint16_t cls, const ClassTable& table);

/// Partition of the centers into per-instance groups.
struct CenterGroups {
  std::vector<std::int32_t> group_of;        // per center, 0-based group id
  std::vector<std::int32_t> representative;  // per group, center index (highest score)
  std::vector<std::uint16_t> center_class;   // per center, class read from the map

  std::int32_t num_groups() const { return static_cast<std::int32_t>(representative.size()); }
};

/// Size-based redundant-center merge. Centers are traversed in CenterSet
/// order (descending score, then row-major); for each base center every
/// same-class center within its class radius has its whole current group
/// merged in (union-find, transitive). Centers whose map class is ignore stay
/// singletons. Group ids are assigned by the representative's position in the
/// CenterSet order.
CenterGroups group_centers(const CenterSet& centers, const GridClassMap& classmap,
                           const ClassTable& table);

}  // namespace phclust

#endif
