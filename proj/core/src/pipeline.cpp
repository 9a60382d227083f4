// Copyright 2026 the phclust authors
// SPDX-License-Identifier: Apache-2.0

#include "phclust/pipeline.hpp"

#include <chrono>
#include <stdexcept>

namespace phclust {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// class votes evaluated only at the center cells; equivalent to the full
// grid_class_majority map wherever a center sits, far cheaper on large grids
GridClassMap center_class_map(const PseudoImage& img, const GridConfig& cfg,
                              const CenterSet& centers) {
  GridClassMap map;
  map.size = img.size;
  map.classes.assign(static_cast<std::size_t>(img.size) * img.size, kIgnoreClass);
  for (const Center& ctr : centers) {
    map.classes[static_cast<std::size_t>(ctr.row) * img.size + ctr.col] =
        window_class_majority(img, cfg, ctr.row, ctr.col);
  }
  return map;
}

}  // namespace

PipelineResult run_pipeline(const PointCloud& cloud,
                            const std::vector<std::uint16_t>& semantics,
                            const Offsets& offsets, const PipelineConfig& cfg) {
  cfg.validate();
  if (semantics.size() != cloud.size() || offsets.size() != cloud.size()) {
    throw std::invalid_argument("run_pipeline: semantics/offsets must cover every point");
  }
  PipelineResult res;
  const auto t_total = Clock::now();

  auto t = Clock::now();
  const VoxelAssignment assignment = cylindrical_voxelize(cloud, cfg.grid);
  PanopticLabeling sem_labels;
  sem_labels.semantic = semantics;
  sem_labels.instance.assign(semantics.size(), kNoInstance);
  const std::vector<std::uint16_t> voxel_class =
      voxel_semantic_labels(assignment, sem_labels);
  res.times.voxelize_ms = ms_since(t);

  // shifted thing voxels: mean over members of (point + offset)
  t = Clock::now();
  std::vector<Vec2> shifted;
  std::vector<std::uint16_t> shifted_class;
  std::vector<std::int32_t> thing_voxel;  // voxel index per shifted entry
  for (std::size_t v = 0; v < assignment.voxels.size(); ++v) {
    if (!cfg.classes.is_thing(voxel_class[v])) continue;
    double sx = 0.0, sy = 0.0;
    int n = 0;
    for (std::int32_t p : assignment.voxels[v].points) {
      if (semantics[p] != voxel_class[v]) continue;  // members voted out don't shift
      sx += static_cast<double>(cloud.xyz()[p].x) + offsets[p].x;
      sy += static_cast<double>(cloud.xyz()[p].y) + offsets[p].y;
      ++n;
    }
    if (n == 0) continue;
    shifted.push_back({static_cast<float>(sx / n), static_cast<float>(sy / n)});
    shifted_class.push_back(voxel_class[v]);
    thing_voxel.push_back(static_cast<std::int32_t>(v));
  }
  const PseudoImage img = build_pseudo_image(shifted, shifted_class, cfg.classes, cfg.grid);
  res.heatmap = class_agnostic(img);
  res.times.build_ms = ms_since(t);

  t = Clock::now();
  res.centers = extract_centers(res.heatmap, cfg.grid);
  res.times.extract_ms = ms_since(t);

  t = Clock::now();
  if (cfg.grouping_enabled) {
    const GridClassMap classmap = center_class_map(img, cfg.grid, res.centers);
    res.groups = group_centers(res.centers, classmap, cfg.classes);
  } else {
    // every center is its own group
    res.groups.group_of.resize(res.centers.size());
    res.groups.representative.resize(res.centers.size());
    for (std::size_t i = 0; i < res.centers.size(); ++i) {
      res.groups.group_of[i] = static_cast<std::int32_t>(i);
      res.groups.representative[i] = static_cast<std::int32_t>(i);
    }
    res.groups.center_class.assign(res.centers.size(), kIgnoreClass);
  }
  res.times.group_ms = ms_since(t);

  t = Clock::now();
  const InstanceAssignment inst = assign_instances(shifted, res.centers, res.groups);
  std::vector<std::pair<std::uint16_t, std::uint32_t>> voxel_results(
      assignment.voxels.size());
  for (std::size_t v = 0; v < assignment.voxels.size(); ++v) {
    voxel_results[v] = {voxel_class[v], kNoInstance};
  }
  for (std::size_t s = 0; s < thing_voxel.size(); ++s) {
    voxel_results[thing_voxel[s]].second = inst.instance[s];
  }
  const PanopticLabeling point_labels = voxel_to_point_labels(assignment, voxel_results);
  res.times.assign_ms = ms_since(t);

  t = Clock::now();
  res.labels = fuse_panoptic(point_labels.semantic, point_labels.instance, cfg.classes);
  res.times.fuse_ms = ms_since(t);

  res.times.total_ms = ms_since(t_total);
  return res;
}

PointClusterResult cluster_shifted_points(const std::vector<Vec2>& shifted,
                                          const std::vector<std::uint16_t>& classes,
                                          const PipelineConfig& cfg) {
  cfg.validate();
  PointClusterResult res;
  const auto t_total = Clock::now();

  auto t = Clock::now();
  const PseudoImage img = build_pseudo_image(shifted, classes, cfg.classes, cfg.grid);
  const Heatmap hm = class_agnostic(img);
  res.times.build_ms = ms_since(t);

  t = Clock::now();
  res.centers = extract_centers(hm, cfg.grid);
  res.times.extract_ms = ms_since(t);

  t = Clock::now();
  if (cfg.grouping_enabled) {
    const GridClassMap classmap = center_class_map(img, cfg.grid, res.centers);
    res.groups = group_centers(res.centers, classmap, cfg.classes);
  } else {
    res.groups.group_of.resize(res.centers.size());
    res.groups.representative.resize(res.centers.size());
    for (std::size_t i = 0; i < res.centers.size(); ++i) {
      res.groups.group_of[i] = static_cast<std::int32_t>(i);
      res.groups.representative[i] = static_cast<std::int32_t>(i);
    }
    res.groups.center_class.assign(res.centers.size(), kIgnoreClass);
  }
  res.times.group_ms = ms_since(t);

  t = Clock::now();
  res.instance = assign_instances(shifted, res.centers, res.groups).instance;
  res.times.assign_ms = ms_since(t);

  res.times.total_ms = ms_since(t_total);
  return res;
}

}  // namespace phclust
