// Copyright 2026 the phclust authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PHCLUST_TYPES_HPP
#define PHCLUST_TYPES_HPP

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace phclust {

// Class id 0 is the ignore/unlabeled class everywhere; instance id 0 means
// "no instance" (stuff or unassigned). Matches the SemanticKITTI convention.
inline constexpr std::uint16_t kIgnoreClass = 0;
inline constexpr std::uint32_t kNoInstance = 0;

struct Vec2 {
  float x = 0.f;
  float y = 0.f;
};

struct Vec3 {
  float x = 0.f;
  float y = 0.f;
  float z = 0.f;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }

/// N LiDAR points in the sensor frame, with optional per-point intensity.
/// Coordinates must be finite; intensity, when present, has length N.
class PointCloud {
 public:
  PointCloud() = default;
  explicit PointCloud(std::vector<Vec3> xyz, std::vector<float> intensity = {});

  std::size_t size() const { return xyz_.size(); }
  bool empty() const { return xyz_.empty(); }
  const std::vector<Vec3>& xyz() const { return xyz_; }
  bool has_intensity() const { return !intensity_.empty(); }
  const std::vector<float>& intensity() const { return intensity_; }

 private:
  std::vector<Vec3> xyz_;
  std::vector<float> intensity_;
};

/// Per-point (semantic class, instance id) pairs. Instance 0 is "no
/// instance"; any point with a nonzero instance must carry a thing class,
/// which is checked against a ClassTable where one is available.
struct PanopticLabeling {
  std::vector<std::uint16_t> semantic;
  std::vector<std::uint32_t> instance;

  std::size_t size() const { return semantic.size(); }
  // Throws if the two arrays disagree in length or differ from n (when n >= 0).
  void validate(std::int64_t n = -1) const;
};

struct ClassSize {
  float width = 0.f;   // m
  float length = 0.f;  // m
  float height = 0.f;  // m
};

/// Thing/stuff class split plus per-thing-class average box sizes used to
/// derive grouping radii.
class ClassTable {
 public:
  ClassTable() = default;
  ClassTable(std::set<std::uint16_t> thing, std::set<std::uint16_t> stuff,
             std::map<std::uint16_t, ClassSize> avg_size);

  bool is_thing(std::uint16_t c) const { return thing_.count(c) != 0; }
  bool is_stuff(std::uint16_t c) const { return stuff_.count(c) != 0; }
  const std::set<std::uint16_t>& thing_classes() const { return thing_; }
  const std::set<std::uint16_t>& stuff_classes() const { return stuff_; }
  const std::map<std::uint16_t, ClassSize>& avg_sizes() const { return sizes_; }
  const ClassSize& avg_size(std::uint16_t c) const;

  // Dense channel index of a thing class in pseudo-image tensors
  // (thing classes sorted ascending). Throws for non-thing classes.
  int channel_of(std::uint16_t c) const;
  int num_thing_channels() const { return static_cast<int>(channels_.size()); }
  std::uint16_t channel_class(int ch) const { return channels_.at(ch); }

  // Checks the instance/thing-class consistency invariant of a labeling.
  void validate_labeling(const PanopticLabeling& labels) const;

 private:
  std::set<std::uint16_t> thing_;
  std::set<std::uint16_t> stuff_;
  std::map<std::uint16_t, ClassSize> sizes_;
  std::vector<std::uint16_t> channels_;
};

/// Cylindrical voxel grid plus cartesian BEV heatmap parameterization.
/// phi always spans the full circle [-pi, pi).
struct GridConfig {
  float rho_min = 0.f;
  float rho_max = 50.f;
  float z_min = -4.f;
  float z_max = 2.f;
  int n_rho = 240;
  int n_phi = 180;
  int n_z = 32;

  float bev_cell = 0.2f;    // heatmap cell edge, m
  float bev_extent = 50.f;  // cartesian half-width, m
  int maxpool_window = 5;   // odd, cells
  int avgpool_window = 5;   // odd, cells
  std::uint32_t min_center_score = 1;

  void validate() const;
  // Heatmap grid size per axis (rows = y, cols = x).
  int bev_size() const;
};

/// Per-thing-point (or per-thing-voxel) 2D displacement toward the instance
/// center, in meters on the BEV plane.
using Offsets = std::vector<Vec2>;

void validate_offsets(const Offsets& off);

}  // namespace phclust

#endif
