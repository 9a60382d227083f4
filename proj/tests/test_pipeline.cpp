// Copyright 2026 the phclust authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "phclust/config.hpp"
#include "phclust/metrics.hpp"
#include "phclust/pipeline.hpp"
#include "phclust/synth.hpp"

using namespace phclust;

TEST_CASE("config JSON round trip") {
  PipelineConfig cfg = default_pipeline_config();
  cfg.grouping_enabled = false;
  cfg.knn_k = 16;
  cfg.grid.n_phi = 90;
  const PipelineConfig back = config_from_json(config_to_json(cfg));
  CHECK(back.grouping_enabled == cfg.grouping_enabled);
  CHECK(back.knn_k == cfg.knn_k);
  CHECK(back.grid.n_phi == cfg.grid.n_phi);
  CHECK(back.grid.rho_max == cfg.grid.rho_max);
  CHECK(back.grid.bev_cell == cfg.grid.bev_cell);
  CHECK(back.classes.thing_classes() == cfg.classes.thing_classes());
  CHECK(back.classes.stuff_classes() == cfg.classes.stuff_classes());
  CHECK(back.classes.avg_size(10).width == cfg.classes.avg_size(10).width);
  CHECK_THROWS(config_from_json("not json"));
}

TEST_CASE("default config covers the full BEV square") {
  const PipelineConfig cfg = default_pipeline_config();
  cfg.validate();
  // the cylinder must cover the corner of the 50 m square
  CHECK(cfg.grid.rho_max * cfg.grid.rho_max >=
        2.f * cfg.grid.bev_extent * cfg.grid.bev_extent);
}

TEST_CASE("pipeline on separated scene with perfect offsets is lossless") {
  const PipelineConfig cfg = default_pipeline_config();
  const Scene scene = generate_scene(separated_preset(20, 6.f, 42));

  Offsets per_point(scene.cloud.size(), Vec2{0.f, 0.f});
  for (std::size_t t = 0; t < scene.thing_points.size(); ++t) {
    per_point[scene.thing_points[t]] = scene.gt_offsets[t];
  }
  const PipelineResult res = run_pipeline(scene.cloud, scene.gt.semantic, per_point, cfg);
  res.labels.validate(std::int64_t(scene.cloud.size()));
  cfg.classes.validate_labeling(res.labels);

  const PanopticReport rep = panoptic_quality(res.labels, scene.gt, cfg.classes);
  CHECK(rep.pq_th == doctest::Approx(1.0));
  // voxel-majority semantics can flip a handful of stuff points where road
  // and vegetation share a voxel, so mIoU is near but not exactly 1
  CHECK(rep.miou > 0.98);
  CHECK(res.centers.size() >= 20);
  CHECK(res.groups.num_groups() == 20);
  CHECK(res.times.total_ms > 0.0);
}

TEST_CASE("grouping flag controls the big-object merge") {
  const Scene scene = generate_scene(partial_view_bus_preset(7));
  Offsets zero(scene.cloud.size(), Vec2{0.f, 0.f});  // raw clumps, no shift

  PipelineConfig cfg = default_pipeline_config();
  cfg.grouping_enabled = true;
  const PipelineResult on = run_pipeline(scene.cloud, scene.gt.semantic, zero, cfg);
  cfg.grouping_enabled = false;
  const PipelineResult off = run_pipeline(scene.cloud, scene.gt.semantic, zero, cfg);

  // the clumped scan of one bus shows up as several heatmap peaks
  CHECK(on.centers.size() >= 3);
  CHECK(on.groups.num_groups() == 1);
  CHECK(off.groups.num_groups() == int(off.centers.size()));
  CHECK(off.groups.num_groups() > 1);

  std::set<std::uint32_t> on_ids, off_ids;
  for (std::size_t i = 0; i < scene.cloud.size(); ++i) {
    if (scene.gt.instance[i] == kNoInstance) continue;
    on_ids.insert(on.labels.instance[i]);
    off_ids.insert(off.labels.instance[i]);
  }
  CHECK(on_ids.size() == 1);
  CHECK(off_ids.size() > 1);
}

TEST_CASE("pipeline handles a scene with no thing points") {
  const PipelineConfig cfg = default_pipeline_config();
  SceneSpec spec;
  spec.seed = 3;
  spec.stuff_points[1] = 500;
  const Scene scene = generate_scene(spec);
  const Offsets zero(scene.cloud.size(), Vec2{0.f, 0.f});
  const PipelineResult res = run_pipeline(scene.cloud, scene.gt.semantic, zero, cfg);
  CHECK(res.centers.empty());
  for (std::uint32_t inst : res.labels.instance) CHECK(inst == kNoInstance);
  for (std::size_t i = 0; i < scene.cloud.size(); ++i) {
    CHECK(res.labels.semantic[i] != kIgnoreClass);
  }
}

TEST_CASE("cluster_shifted_points recovers separated instances") {
  const PipelineConfig cfg = default_pipeline_config();
  const Scene scene = generate_scene(separated_preset(30, 6.f, 13));
  std::vector<Vec2> shifted;
  std::vector<std::uint16_t> classes;
  for (std::size_t t = 0; t < scene.thing_points.size(); ++t) {
    const std::int32_t i = scene.thing_points[t];
    shifted.push_back({scene.cloud.xyz()[i].x + scene.gt_offsets[t].x,
                       scene.cloud.xyz()[i].y + scene.gt_offsets[t].y});
    classes.push_back(scene.gt.semantic[i]);
  }
  const PointClusterResult res = cluster_shifted_points(shifted, classes, cfg);
  REQUIRE(res.instance.size() == shifted.size());
  CHECK(res.groups.num_groups() == 30);

  // predicted partition must equal the gt partition exactly
  std::map<std::uint32_t, std::uint32_t> fwd;
  std::map<std::uint32_t, std::uint32_t> rev;
  for (std::size_t t = 0; t < shifted.size(); ++t) {
    const std::uint32_t gt_id = scene.gt.instance[scene.thing_points[t]];
    const std::uint32_t pred_id = res.instance[t];
    CHECK(pred_id != 0);
    const auto f = fwd.find(gt_id);
    if (f == fwd.end()) {
      fwd[gt_id] = pred_id;
    } else {
      CHECK(f->second == pred_id);
    }
    const auto r = rev.find(pred_id);
    if (r == rev.end()) {
      rev[pred_id] = gt_id;
    } else {
      CHECK(r->second == gt_id);
    }
  }
}

TEST_CASE("pipeline input validation") {
  const PipelineConfig cfg = default_pipeline_config();
  const Scene scene = generate_scene(separated_preset(4, 6.f, 1));
  const Offsets short_offsets(scene.cloud.size() - 1, Vec2{0.f, 0.f});
  CHECK_THROWS(run_pipeline(scene.cloud, scene.gt.semantic, short_offsets, cfg));
  std::vector<std::uint16_t> short_sem(scene.cloud.size() - 1, 1);
  const Offsets ok(scene.cloud.size(), Vec2{0.f, 0.f});
  CHECK_THROWS(run_pipeline(scene.cloud, short_sem, ok, cfg));
}
