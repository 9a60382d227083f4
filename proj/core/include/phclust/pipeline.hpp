// Copyright 2026 the phclust authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PHCLUST_PIPELINE_HPP
#define PHCLUST_PIPELINE_HPP

#include <cstdint>
#include <vector>

#include "phclust/assignment.hpp"
#include "phclust/config.hpp"
#include "phclust/grouping.hpp"
#include "phclust/heatmap.hpp"
#include "phclust/partition.hpp"
#include "phclust/types.hpp"

namespace phclust {

struct StageTimes {
  double voxelize_ms = 0.0;
  double build_ms = 0.0;
  double extract_ms = 0.0;
  double group_ms = 0.0;
  double assign_ms = 0.0;
  double fuse_ms = 0.0;
  double total_ms = 0.0;
};

struct PipelineResult {
  PanopticLabeling labels;
  CenterSet centers;
  CenterGroups groups;
  Heatmap heatmap;
  StageTimes times;
};

/// Full voxel-level pipeline: cylindrical voxelization, voxel semantics by
/// majority vote, shifted thing voxels (voxel point mean + mean member
/// offset), pseudo heatmap, center extraction, grouping, nearest-center
/// assignment, voxel-to-point mapping, and voting-based fusion.
/// offsets holds one 2D offset per point (stuff entries ignored).
PipelineResult run_pipeline(const PointCloud& cloud,
                            const std::vector<std::uint16_t>& semantics,
                            const Offsets& offsets, const PipelineConfig& cfg);

struct PointClusterResult {
  std::vector<std::uint32_t> instance;  // per input point
  CenterSet centers;
  CenterGroups groups;
  StageTimes times;
};

/// Point-level clustering path (build + extract + group + assign) over
/// already-shifted thing points; this is the latency-comparison surface
/// against the mean-shift / DBSCAN baselines.
PointClusterResult cluster_shifted_points(const std::vector<Vec2>& shifted,
                                          const std::vector<std::uint16_t>& classes,
                                          const PipelineConfig& cfg);

}  // namespace phclust

#endif
