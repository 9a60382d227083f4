// Copyright 2026 the phclust authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PHCLUST_ASSIGNMENT_HPP
#define PHCLUST_ASSIGNMENT_HPP

#include <cstdint>
#include <vector>

#include "phclust/grouping.hpp"
#include "phclust/heatmap.hpp"
#include "phclust/types.hpp"

namespace phclust {

struct InstanceAssignment {
  std::vector<std::uint32_t> instance;  // per input element, 1-based; 0 = unassigned
  std::uint64_t unassigned = 0;         // tally when no centers existed
};

/// Nearest-center clustering of shifted elements on the BEV plane,
/// class-agnostic. Instance id = group id of the nearest center + 1; distance
/// ties break toward the smaller group id. With zero centers everything gets
/// instance 0 and the tally records it.
InstanceAssignment assign_instances(const std::vector<Vec2>& shifted,
                                    const CenterSet& centers,
                                    const CenterGroups& groups);

/// Voting-based fusion of the semantic and instance outputs: every predicted
/// instance takes the majority semantic class of its points (ties toward the
/// smaller class id). If the majority class is not a thing class the
/// instance id is cleared. Stuff points and unassigned thing points pass
/// through. Idempotent.
PanopticLabeling fuse_panoptic(const std::vector<std::uint16_t>& semantic,
                               const std::vector<std::uint32_t>& instance,
                               const ClassTable& table);

}  // namespace phclust

#endif
