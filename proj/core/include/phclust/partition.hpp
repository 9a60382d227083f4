// Copyright 2026 the phclust authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PHCLUST_PARTITION_HPP
#define PHCLUST_PARTITION_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "phclust/types.hpp"

namespace phclust {

/// A point falls outside the cylindrical range.
inline constexpr std::int64_t kOutOfRange = -1;

struct VoxelRecord {
  std::int64_t flat = 0;                // (i_rho * n_phi + i_phi) * n_z + i_z
  std::vector<std::int32_t> points;     // member point indices, ascending
};

/// Result of cylindrical voxelization. Out-of-range points keep their slot in
/// point_to_voxel (marked kOutOfRange) so label arrays stay aligned end to end.
struct VoxelAssignment {
  std::vector<std::int64_t> point_to_voxel;  // flat voxel index per point
  std::vector<VoxelRecord> voxels;           // non-empty voxels, ascending flat index
  std::map<std::int64_t, std::int32_t> flat_to_voxel;  // flat index -> position in voxels

  std::size_t num_nonempty() const { return voxels.size(); }
};

struct CylIndex {
  int i_rho = 0;
  int i_phi = 0;
  int i_z = 0;
};

// Decompose / compose the flat voxel index.
CylIndex unflatten(std::int64_t flat, const GridConfig& cfg);
std::int64_t flatten(const CylIndex& idx, const GridConfig& cfg);

/// Bins one point; returns kOutOfRange if outside the cylindrical range.
/// Bins are half-open [lo, hi): a point exactly on an upper boundary belongs
/// to the next bin (and is out of range at rho_max / z_max). The phi seam
/// sits at -pi; atan2's +pi wraps to the seam bin.
std::int64_t bin_point(const Vec3& p, const GridConfig& cfg);

/// Uniform rho/phi/z binning of the whole cloud.
VoxelAssignment cylindrical_voxelize(const PointCloud& cloud, const GridConfig& cfg);

/// Voxel -> polar BEV cell mapping: (i_rho, i_phi, i_z) collapses along z to
/// cell (i_rho, i_phi). H = n_rho, W = n_phi.
struct BevIndexMap {
  int height = 0;  // n_rho
  int width = 0;   // n_phi
  std::vector<std::pair<int, int>> voxel_to_bev;          // per voxel (row, col)
  std::vector<std::vector<std::int32_t>> bev_to_voxels;   // flat cell -> voxel indices
};

BevIndexMap voxel_to_bev(const VoxelAssignment& assignment, const GridConfig& cfg);

/// Gathers the BEV feature vector of each voxel's cell. bev_features is a
/// row-major H x W x C grid. Returns an N_voxels x C row-major matrix.
std::vector<float> gather_bev_to_voxels(const std::vector<float>& bev_features,
                                        int height, int width, int channels,
                                        const BevIndexMap& map);

/// Majority vote over each voxel's member-point classes; ties go to the
/// smaller class id.
std::vector<std::uint16_t> voxel_semantic_labels(const VoxelAssignment& assignment,
                                                 const PanopticLabeling& labels);

/// Per-voxel offset label: the mean over member thing points of
/// (instance center - point position), in BEV. Voxels without thing members
/// get a zero offset. Throws if a present instance id has no center entry.
Offsets voxel_offset_labels(const VoxelAssignment& assignment, const PointCloud& cloud,
                            const PanopticLabeling& labels,
                            const std::map<std::uint32_t, Vec2>& centers);

/// Every in-range point inherits its voxel's (class, instance); out-of-range
/// points get (kIgnoreClass, kNoInstance).
PanopticLabeling voxel_to_point_labels(
    const VoxelAssignment& assignment,
    const std::vector<std::pair<std::uint16_t, std::uint32_t>>& voxel_results);

}  // namespace phclust

#endif
