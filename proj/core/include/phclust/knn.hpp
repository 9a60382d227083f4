// Copyright 2026 the phclust authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PHCLUST_KNN_HPP
#define PHCLUST_KNN_HPP

#include <cstdint>
#include <vector>

#include "phclust/types.hpp"

namespace phclust {

/// k nearest neighbors of every point, by Euclidean distance, self included.
/// Row i is sorted by increasing distance; ties break toward the smaller
/// index. When M < k, rows are padded by repeating i so downstream shapes
/// hold. Uses a uniform spatial hash grid for M >= 256, brute force below.
std::vector<std::vector<std::int32_t>> knn_indices(const std::vector<Vec3>& positions,
                                                   int k);

}  // namespace phclust

#endif
