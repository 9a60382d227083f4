// Copyright 2026 the phclust authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PHCLUST_IO_HPP
#define PHCLUST_IO_HPP

#include <string>
#include <vector>

#include "phclust/attention.hpp"
#include "phclust/heatmap.hpp"
#include "phclust/types.hpp"

namespace phclust {

// SemanticKITTI-style label file: one little-endian 32-bit word per point,
// lower 16 bits = semantic class, upper 16 bits = instance id.
PanopticLabeling read_label_file(const std::string& path);
void write_label_file(const std::string& path, const PanopticLabeling& labels);

// KITTI velodyne layout: packed little-endian float32 (x, y, z, intensity).
PointCloud read_point_file(const std::string& path);
void write_point_file(const std::string& path, const PointCloud& cloud);

// Per-point 2D BEV offsets: packed little-endian float32 (dx, dy).
Offsets read_offset_file(const std::string& path);
void write_offset_file(const std::string& path, const Offsets& off);

/// 16-bit binary PGM dump of a heatmap for visual inspection. Scores above
/// 65535 saturate.
void write_pgm16(const std::string& path, const Heatmap& hm);

// Attention weight blob: one JSON header line (shapes + head count) followed
// by the concatenated little-endian float64 matrix data, row-major.
void write_weights(const std::string& path, const AttentionWeights& w);
AttentionWeights read_weights(const std::string& path);

}  // namespace phclust

#endif
