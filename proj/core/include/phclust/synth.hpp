// Copyright 2026 the phclust authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PHCLUST_SYNTH_HPP
#define PHCLUST_SYNTH_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "phclust/types.hpp"

namespace phclust {

enum class CenterMode {
  kMassCenter,       // mean of the instance's sampled points
  kAxisAlignedBox,   // center of the axis-aligned bounding box of the points
};

enum class ScatterModel {
  kUniform,   // uniform over the whole footprint
  kPartial,   // one long side of the footprint only (partial LiDAR view)
  kClumps,    // a few tight clusters along the footprint's long axis
};

struct InstanceSpec {
  std::uint16_t cls = 0;
  float width = 1.f;     // footprint, m
  float length = 1.f;    // m
  Vec2 position;         // footprint center, m
  int point_count = 100;
  ScatterModel scatter = ScatterModel::kUniform;
  int clump_count = 4;         // kClumps only
  float clump_sigma = 0.15f;   // m, kClumps only
  float z_low = -1.f;
  float z_high = 1.f;
};

/// Seeded synthetic scene: instances plus per-class stuff background. Stuff
/// points are rejection-sampled to keep instance_margin meters away from
/// every instance footprint so voxel-level class mixing cannot occur.
struct SceneSpec {
  std::vector<InstanceSpec> instances;
  std::map<std::uint16_t, int> stuff_points;  // class -> point count
  float extent = 50.f;                        // half-width, m
  float instance_margin = 2.5f;               // m
  CenterMode center_mode = CenterMode::kAxisAlignedBox;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Generated scene with ground truth. Offsets cover thing points only, in the
/// order given by thing_points; each equals (instance center - point xy).
struct Scene {
  PointCloud cloud;
  PanopticLabeling gt;
  std::map<std::uint32_t, Vec2> centers;   // instance id -> BEV center
  std::vector<std::int32_t> thing_points;  // indices of thing points, ascending
  Offsets gt_offsets;                      // aligned with thing_points
};

Scene generate_scene(const SceneSpec& spec);

/// Adds isotropic Gaussian noise of std sigma per axis; sigma = 0 is identity.
Offsets perturb_offsets(const Offsets& off, double sigma, std::uint64_t seed);

// Presets used by the acceptance tests and the synth-bench CLI.

/// Instances on a sparse layout with pairwise BEV gaps >= min_gap meters.
SceneSpec separated_preset(int num_instances, float min_gap, std::uint64_t seed);

/// One bus-sized object scanned as a handful of point clumps along its body
/// (the partial-view big-object case that splits into several heatmap peaks).
SceneSpec partial_view_bus_preset(std::uint64_t seed);

/// Pedestrians on a lattice with the given spacing.
SceneSpec crowded_pedestrian_preset(int rows, int cols, float spacing,
                                    std::uint64_t seed);

/// Default class table matching the presets (classes, average sizes).
ClassTable default_class_table();

SceneSpec scene_spec_from_json(const std::string& json_text);
std::string scene_spec_to_json(const SceneSpec& spec);

}  // namespace phclust

#endif
