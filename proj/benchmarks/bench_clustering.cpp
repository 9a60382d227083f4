// Copyright 2026 the phclust authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <vector>

#include "phclust/baselines.hpp"
#include "phclust/config.hpp"
#include "phclust/pipeline.hpp"
#include "phclust/synth.hpp"

namespace {

using namespace phclust;

struct ShiftedScene {
  std::vector<Vec2> shifted;
  std::vector<std::uint16_t> classes;
};

ShiftedScene make_shifted(int instances, int scale) {
  SceneSpec spec = separated_preset(instances, 6.f, 17);
  for (InstanceSpec& inst : spec.instances) inst.point_count *= scale;
  spec.stuff_points.clear();
  const Scene scene = generate_scene(spec);
  ShiftedScene out;
  for (std::size_t t = 0; t < scene.thing_points.size(); ++t) {
    const std::int32_t i = scene.thing_points[t];
    out.shifted.push_back({scene.cloud.xyz()[i].x + scene.gt_offsets[t].x,
                           scene.cloud.xyz()[i].y + scene.gt_offsets[t].y});
    out.classes.push_back(scene.gt.semantic[i]);
  }
  return out;
}

void BM_HeatmapClustering(benchmark::State& state) {
  const PipelineConfig cfg = default_pipeline_config();
  const ShiftedScene s = make_shifted(50, int(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cluster_shifted_points(s.shifted, s.classes, cfg));
  }
  state.SetComplexityN(std::int64_t(s.shifted.size()));
}
BENCHMARK(BM_HeatmapClustering)->Arg(1)->Arg(4)->Arg(10)->Complexity(benchmark::oN);

void BM_MeanShift(benchmark::State& state) {
  const ShiftedScene s = make_shifted(50, int(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mean_shift(s.shifted, 1.63f));
  }
  state.SetComplexityN(std::int64_t(s.shifted.size()));
}
BENCHMARK(BM_MeanShift)->Arg(1)->Arg(4);

void BM_Dbscan(benchmark::State& state) {
  const ShiftedScene s = make_shifted(50, int(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(dbscan(s.shifted, 0.5f, 4));
  }
  state.SetComplexityN(std::int64_t(s.shifted.size()));
}
BENCHMARK(BM_Dbscan)->Arg(1)->Arg(4);

void BM_FullPipeline(benchmark::State& state) {
  const PipelineConfig cfg = default_pipeline_config();
  const Scene scene = generate_scene(separated_preset(50, 6.f, 18));
  Offsets per_point(scene.cloud.size(), Vec2{0.f, 0.f});
  for (std::size_t t = 0; t < scene.thing_points.size(); ++t) {
    per_point[scene.thing_points[t]] = scene.gt_offsets[t];
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_pipeline(scene.cloud, scene.gt.semantic, per_point, cfg));
  }
}
BENCHMARK(BM_FullPipeline);

}  // namespace
