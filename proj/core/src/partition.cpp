// Copyright 2026 the phclust authors
// SPDX-License-Identifier: Apache-2.0

#include "phclust/partition.hpp"

#include <cmath>
#include <stdexcept>

namespace phclust {

CylIndex unflatten(std::int64_t flat, const GridConfig& cfg) {
  CylIndex idx;
  idx.i_z = static_cast<int>(flat % cfg.n_z);
  flat /= cfg.n_z;
  idx.i_phi = static_cast<int>(flat % cfg.n_phi);
  idx.i_rho = static_cast<int>(flat / cfg.n_phi);
  return idx;
}

std::int64_t flatten(const CylIndex& idx, const GridConfig& cfg) {
  return (static_cast<std::int64_t>(idx.i_rho) * cfg.n_phi + idx.i_phi) * cfg.n_z +
         idx.i_z;
}

std::int64_t bin_point(const Vec3& p, const GridConfig& cfg) {
  const double rho = std::hypot(static_cast<double>(p.x), static_cast<double>(p.y));
  if (rho < cfg.rho_min || rho >= cfg.rho_max) return kOutOfRange;
  if (p.z < cfg.z_min || p.z >= cfg.z_max) return kOutOfRange;

  double phi = std::atan2(static_cast<double>(p.y), static_cast<double>(p.x));
  if (phi >= M_PI) phi = -M_PI;  // atan2 may return +pi; the seam bin is at -pi

  const double rho_step = (static_cast<double>(cfg.rho_max) - cfg.rho_min) / cfg.n_rho;
  const double phi_step = 2.0 * M_PI / cfg.n_phi;
  const double z_step = (static_cast<double>(cfg.z_max) - cfg.z_min) / cfg.n_z;

  CylIndex idx;
  idx.i_rho = static_cast<int>((rho - cfg.rho_min) / rho_step);
  idx.i_phi = static_cast<int>((phi + M_PI) / phi_step);
  idx.i_z = static_cast<int>((p.z - cfg.z_min) / z_step);
  // rounding at the very top of a range can land on the bin count
  if (idx.i_rho >= cfg.n_rho) idx.i_rho = cfg.n_rho - 1;
  if (idx.i_phi >= cfg.n_phi) idx.i_phi = cfg.n_phi - 1;
  if (idx.i_z >= cfg.n_z) idx.i_z = cfg.n_z - 1;
  return flatten(idx, cfg);
}

VoxelAssignment cylindrical_voxelize(const PointCloud& cloud, const GridConfig& cfg) {
  cfg.validate();
  VoxelAssignment out;
  out.point_to_voxel.resize(cloud.size());

  std::map<std::int64_t, std::vector<std::int32_t>> buckets;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const std::int64_t flat = bin_point(cloud.xyz()[i], cfg);
    out.point_to_voxel[i] = flat;
    if (flat != kOutOfRange) {
      buckets[flat].push_back(static_cast<std::int32_t>(i));
    }
  }
  out.voxels.reserve(buckets.size());
  for (auto& [flat, members] : buckets) {
    out.flat_to_voxel[flat] = static_cast<std::int32_t>(out.voxels.size());
    out.voxels.push_back({flat, std::move(members)});
  }
  return out;
}

BevIndexMap voxel_to_bev(const VoxelAssignment& assignment, const GridConfig& cfg) {
  BevIndexMap map;
  map.height = cfg.n_rho;
  map.width = cfg.n_phi;
  map.voxel_to_bev.reserve(assignment.voxels.size());
  map.bev_to_voxels.resize(static_cast<std::size_t>(map.height) * map.width);
  for (std::size_t v = 0; v < assignment.voxels.size(); ++v) {
    const CylIndex idx = unflatten(assignment.voxels[v].flat, cfg);
    map.voxel_to_bev.emplace_back(idx.i_rho, idx.i_phi);
    map.bev_to_voxels[static_cast<std::size_t>(idx.i_rho) * map.width + idx.i_phi]
        .push_back(static_cast<std::int32_t>(v));
  }
  return map;
}

std::vector<float> gather_bev_to_voxels(const std::vector<float>& bev_features,
                                        int height, int width, int channels,
                                        const BevIndexMap& map) {
  if (height != map.height || width != map.width) {
    throw std::invalid_argument("gather_bev_to_voxels: grid dims do not match the map");
  }
  if (bev_features.size() !=
      static_cast<std::size_t>(height) * width * channels) {
    throw std::invalid_argument("gather_bev_to_voxels: feature buffer size mismatch");
  }
  std::vector<float> out(map.voxel_to_bev.size() * channels);
  for (std::size_t v = 0; v < map.voxel_to_bev.size(); ++v) {
    const auto [r, c] = map.voxel_to_bev[v];
    const std::size_t src = (static_cast<std::size_t>(r) * width + c) * channels;
    for (int ch = 0; ch < channels; ++ch) {
      out[v * channels + ch] = bev_features[src + ch];
    }
  }
  return out;
}

namespace {

// Most frequent key; ties toward the smaller key. std::map iterates sorted,
// so the first strict maximum wins.
template <typename K, typename C>
K majority(const std::map<K, C>& counts) {
  K best{};
  C best_count = 0;
  for (const auto& [key, count] : counts) {
    if (count > best_count) {
      best = key;
      best_count = count;
    }
  }
  return best;
}

}  // namespace

std::vector<std::uint16_t> voxel_semantic_labels(const VoxelAssignment& assignment,
                                                 const PanopticLabeling& labels) {
  labels.validate(static_cast<std::int64_t>(assignment.point_to_voxel.size()));
  std::vector<std::uint16_t> out(assignment.voxels.size());
  for (std::size_t v = 0; v < assignment.voxels.size(); ++v) {
    std::map<std::uint16_t, int> counts;
    for (std::int32_t p : assignment.voxels[v].points) {
      ++counts[labels.semantic[p]];
    }
    out[v] = majority(counts);
  }
  return out;
}

Offsets voxel_offset_labels(const VoxelAssignment& assignment, const PointCloud& cloud,
                            const PanopticLabeling& labels,
                            const std::map<std::uint32_t, Vec2>& centers) {
  labels.validate(static_cast<std::int64_t>(cloud.size()));
  if (assignment.point_to_voxel.size() != cloud.size()) {
    throw std::invalid_argument("voxel_offset_labels: assignment/cloud size mismatch");
  }
  Offsets out(assignment.voxels.size(), Vec2{0.f, 0.f});
  for (std::size_t v = 0; v < assignment.voxels.size(); ++v) {
    double sx = 0.0, sy = 0.0;
    int n = 0;
    for (std::int32_t p : assignment.voxels[v].points) {
      const std::uint32_t inst = labels.instance[p];
      if (inst == kNoInstance) continue;
      auto it = centers.find(inst);
      if (it == centers.end()) {
        throw std::invalid_argument("voxel_offset_labels: no center for instance " +
                                    std::to_string(inst));
      }
      sx += static_cast<double>(it->second.x) - cloud.xyz()[p].x;
      sy += static_cast<double>(it->second.y) - cloud.xyz()[p].y;
      ++n;
    }
    if (n > 0) {
      out[v] = {static_cast<float>(sx / n), static_cast<float>(sy / n)};
    }
  }
  return out;
}

PanopticLabeling voxel_to_point_labels(
    const VoxelAssignment& assignment,
    const std::vector<std::pair<std::uint16_t, std::uint32_t>>& voxel_results) {
  if (voxel_results.size() != assignment.voxels.size()) {
    throw std::invalid_argument("voxel_to_point_labels: results do not cover all voxels");
  }
  PanopticLabeling out;
  out.semantic.assign(assignment.point_to_voxel.size(), kIgnoreClass);
  out.instance.assign(assignment.point_to_voxel.size(), kNoInstance);
  for (std::size_t v = 0; v < assignment.voxels.size(); ++v) {
    const auto [cls, inst] = voxel_results[v];
    for (std::int32_t p : assignment.voxels[v].points) {
      out.semantic[p] = cls;
      out.instance[p] = inst;
    }
  }
  return out;
}

}  // namespace phclust
