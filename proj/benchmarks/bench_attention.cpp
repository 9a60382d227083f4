// Copyright 2026 the phclust authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <vector>

#include "phclust/attention.hpp"
#include "phclust/knn.hpp"
#include "phclust/rng.hpp"

namespace {

using namespace phclust;

ThingFeatures make_features(int m, int channels, std::uint64_t seed) {
  Rng rng(seed);
  ThingFeatures feat;
  feat.features.resize(m, channels);
  for (int i = 0; i < m; ++i) {
    for (int c = 0; c < channels; ++c) feat.features(i, c) = rng.normal();
  }
  feat.positions.resize(m);
  const double span = std::sqrt(double(m));
  for (Vec3& p : feat.positions) {
    p = {float(rng.uniform(-span, span)), float(rng.uniform(-span, span)),
         float(rng.uniform(-2.0, 2.0))};
  }
  return feat;
}

void BM_KnnIndices(benchmark::State& state) {
  const int m = int(state.range(0));
  const ThingFeatures feat = make_features(m, 8, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(knn_indices(feat.positions, 25));
  }
  state.SetComplexityN(m);
}
BENCHMARK(BM_KnnIndices)->Range(1 << 10, 1 << 17)->Complexity(benchmark::oN);

void BM_AttentionForward(benchmark::State& state) {
  const int m = int(state.range(0));
  const int k = int(state.range(1));
  Rng rng(2);
  const AttentionWeights w = random_weights(32, 32, 64, 4, rng);
  const ThingFeatures feat = make_features(m, 32, 3);
  const auto idx = knn_indices(feat.positions, k);
  for (auto _ : state) {
    benchmark::DoNotOptimize(attention_forward(feat, idx, w));
  }
  state.SetComplexityN(m);
}
BENCHMARK(BM_AttentionForward)
    ->ArgsProduct({{1 << 10, 1 << 13, 1 << 16}, {9, 25, 49}})
    ->Complexity(benchmark::oN);

void BM_DenseAttentionReference(benchmark::State& state) {
  const int m = int(state.range(0));
  Rng rng(4);
  const AttentionWeights w = random_weights(32, 32, 64, 4, rng);
  const ThingFeatures feat = make_features(m, 32, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dense_attention_reference(feat, w));
  }
  state.SetComplexityN(m);
}
BENCHMARK(BM_DenseAttentionReference)->Range(1 << 8, 1 << 12)->Complexity(benchmark::oNSquared);

}  // namespace
