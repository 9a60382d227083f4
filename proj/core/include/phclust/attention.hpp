// Copyright 2026 the phclust authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PHCLUST_ATTENTION_HPP
#define PHCLUST_ATTENTION_HPP

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "phclust/rng.hpp"
#include "phclust/types.hpp"

namespace phclust {

using Matrix = Eigen::MatrixXd;

/// Features and BEV-frame positions of the M thing voxels entering the
/// local-attention layer.
struct ThingFeatures {
  Matrix features;                // M x C
  std::vector<Vec3> positions;    // M

  void validate() const;
  std::int64_t count() const { return features.rows(); }
};

/// One self-attention layer's parameters: per-projection matrices, the output
/// projection, and the feed-forward pair. heads must divide the projected
/// channel size C'.
struct AttentionWeights {
  Matrix w_q;    // C x C'
  Matrix w_k;    // C x C'
  Matrix w_v;    // C x C'
  Matrix w_o;    // C' x C
  Matrix w_ff1;  // C x C_ff
  Matrix w_ff2;  // C_ff x C
  int heads = 4;

  void validate() const;
  int in_channels() const { return static_cast<int>(w_q.rows()); }
  int proj_channels() const { return static_cast<int>(w_q.cols()); }
  int ff_channels() const { return static_cast<int>(w_ff1.cols()); }
};

/// Seeded weights with entries ~ N(0, 1/C); numerically tame for tests.
AttentionWeights random_weights(int channels, int proj_channels, int ff_channels,
                                int heads, Rng& rng);

/// One forward pass of the knn-restricted multi-head self-attention layer:
/// per query, logits over its k neighbors scaled by 1/sqrt(C'/heads),
/// softmaxed, value-weighted, heads concatenated, output-projected, residual
/// added, then a ReLU feed-forward sublayer with residual. No positional
/// embedding term exists anywhere. Throws on non-finite intermediates.
Matrix attention_forward(const ThingFeatures& feat,
                         const std::vector<std::vector<std::int32_t>>& idx,
                         const AttentionWeights& w);

/// Dense full-attention reference: identical layer algebra computed with
/// whole-matrix operations over all M elements (no neighbor restriction).
/// Kept as an independent second route for checking attention_forward with
/// k = M; not used by the pipeline.
Matrix dense_attention_reference(const ThingFeatures& feat, const AttentionWeights& w);

/// Analytic multiply-accumulate count of the neighbor-interaction core
/// (logits + value weighting): 2 * M * k * C'. Exactly linear in M and k.
std::uint64_t attention_flop_count(std::int64_t m, int k, int proj_channels);

}  // namespace phclust

#endif
