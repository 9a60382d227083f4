// Copyright 2026 the phclust authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PHCLUST_BASELINES_HPP
#define PHCLUST_BASELINES_HPP

#include <cstdint>
#include <vector>

#include "phclust/types.hpp"

namespace phclust {

inline constexpr std::int32_t kNoise = -1;

/// Flat-kernel mean shift over 2D BEV points. Mode seeking starts from every
/// point; converged modes within bandwidth/2 merge into one cluster (first
/// mode in ascending point order wins). Deterministic.
std::vector<std::int32_t> mean_shift(const std::vector<Vec2>& points, float bandwidth,
                                     int max_iter = 100, float tol = 1e-3f);

/// Standard DBSCAN with ascending-index core-point expansion. Noise points
/// get kNoise.
std::vector<std::int32_t> dbscan(const std::vector<Vec2>& points, float eps,
                                 int min_pts);

}  // namespace phclust

#endif
