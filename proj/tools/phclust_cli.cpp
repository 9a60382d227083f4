// Copyright 2026 the phclust authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: pseudo-heatmap panoptic clustering, evaluation,
// synthetic noise/algorithm sweeps, and the knn-attention self-check.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "phclust/assignment.hpp"
#include "phclust/attention.hpp"
#include "phclust/baselines.hpp"
#include "phclust/config.hpp"
#include "phclust/io.hpp"
#include "phclust/knn.hpp"
#include "phclust/metrics.hpp"
#include "phclust/pipeline.hpp"
#include "phclust/rng.hpp"
#include "phclust/synth.hpp"

namespace {

using namespace phclust;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

PipelineConfig load_config_or_default(const std::string& path) {
  return path.empty() ? default_pipeline_config() : load_config_file(path);
}

nlohmann::json report_to_json(const PanopticReport& rep) {
  nlohmann::json j;
  j["PQ"] = rep.pq * 100.0;
  j["PQ_dagger"] = rep.pq_dagger * 100.0;
  j["SQ"] = rep.sq * 100.0;
  j["RQ"] = rep.rq * 100.0;
  j["PQ_Th"] = rep.pq_th * 100.0;
  j["SQ_Th"] = rep.sq_th * 100.0;
  j["RQ_Th"] = rep.rq_th * 100.0;
  j["PQ_St"] = rep.pq_st * 100.0;
  j["SQ_St"] = rep.sq_st * 100.0;
  j["RQ_St"] = rep.rq_st * 100.0;
  j["mIoU"] = rep.miou * 100.0;
  nlohmann::json per_class = nlohmann::json::object();
  for (const auto& [cls, c] : rep.per_class) {
    nlohmann::json jc;
    jc["PQ"] = c.pq * 100.0;
    jc["SQ"] = c.sq * 100.0;
    jc["RQ"] = c.rq * 100.0;
    jc["TP"] = c.tp;
    jc["FP"] = c.fp;
    jc["FN"] = c.fn;
    per_class[std::to_string(cls)] = jc;
  }
  j["per_class"] = per_class;
  return j;
}

void write_report_csv(std::ostream& out, const PanopticReport& rep) {
  out << "class,PQ,SQ,RQ,TP,FP,FN\n";
  for (const auto& [cls, c] : rep.per_class) {
    out << cls << "," << c.pq * 100.0 << "," << c.sq * 100.0 << "," << c.rq * 100.0
        << "," << c.tp << "," << c.fp << "," << c.fn << "\n";
  }
}

// Builds the prediction labeling for a clustering result over the scene's
// thing points, then applies the voting-based fusion.
PanopticLabeling labeling_from_clusters(const Scene& scene,
                                        const std::vector<std::uint32_t>& thing_instance,
                                        const ClassTable& table) {
  std::vector<std::uint16_t> semantic = scene.gt.semantic;
  std::vector<std::uint32_t> instance(scene.gt.size(), kNoInstance);
  for (std::size_t i = 0; i < scene.thing_points.size(); ++i) {
    instance[scene.thing_points[i]] = thing_instance[i];
  }
  return fuse_panoptic(semantic, instance, table);
}

std::vector<std::uint32_t> ids_from_baseline(const std::vector<std::int32_t>& raw) {
  std::vector<std::uint32_t> out(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    out[i] = raw[i] == kNoise ? kNoInstance : static_cast<std::uint32_t>(raw[i]) + 1;
  }
  return out;
}

int run_cluster(const std::string& points_path, const std::string& sem_path,
                const std::string& off_path, const std::string& config_path,
                const std::string& out_path, const std::string& pgm_path,
                bool no_grouping) {
  PipelineConfig cfg = load_config_or_default(config_path);
  if (no_grouping) cfg.grouping_enabled = false;

  const PointCloud cloud = read_point_file(points_path);
  const PanopticLabeling sem = read_label_file(sem_path);
  sem.validate(static_cast<std::int64_t>(cloud.size()));
  const Offsets offsets = read_offset_file(off_path);
  if (offsets.size() != cloud.size()) {
    throw std::runtime_error("offset file does not match the point count");
  }

  const PipelineResult res = run_pipeline(cloud, sem.semantic, offsets, cfg);
  write_label_file(out_path, res.labels);
  if (!pgm_path.empty()) write_pgm16(pgm_path, res.heatmap);

  std::printf("points        %zu\n", cloud.size());
  std::printf("centers       %zu (groups %d)\n", res.centers.size(),
              res.groups.num_groups());
  std::printf("voxelize      %8.3f ms\n", res.times.voxelize_ms);
  std::printf("build         %8.3f ms\n", res.times.build_ms);
  std::printf("extract       %8.3f ms\n", res.times.extract_ms);
  std::printf("group         %8.3f ms\n", res.times.group_ms);
  std::printf("assign        %8.3f ms\n", res.times.assign_ms);
  std::printf("fuse          %8.3f ms\n", res.times.fuse_ms);
  std::printf("total         %8.3f ms\n", res.times.total_ms);
  return 0;
}

int run_eval(const std::string& pred_path, const std::string& gt_path,
             const std::string& config_path, const std::string& json_path,
             const std::string& csv_path) {
  const PipelineConfig cfg = load_config_or_default(config_path);
  const PanopticLabeling pred = read_label_file(pred_path);
  const PanopticLabeling gt = read_label_file(gt_path);
  const PanopticReport rep = panoptic_quality(pred, gt, cfg.classes);

  const nlohmann::json j = report_to_json(rep);
  std::cout << j.dump(2) << "\n";
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    out << j.dump(2) << "\n";
  }
  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    write_report_csv(out, rep);
  }
  return 0;
}

int run_synth_bench(const std::string& spec_path, const std::string& preset,
                    const std::vector<double>& sigmas,
                    const std::vector<std::string>& algos, int num_seeds,
                    const std::string& config_path, const std::string& out_csv,
                    double bandwidth, double eps, int min_pts) {
  const PipelineConfig cfg = load_config_or_default(config_path);

  SceneSpec base_spec;
  if (!spec_path.empty()) {
    std::ifstream in(spec_path);
    if (!in) throw std::runtime_error("cannot open scene spec: " + spec_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    base_spec = scene_spec_from_json(buf.str());
  } else if (preset == "separated") {
    base_spec = separated_preset(50, 6.f, 1);
  } else if (preset == "bus") {
    base_spec = partial_view_bus_preset(1);
  } else if (preset == "crowded") {
    base_spec = crowded_pedestrian_preset(5, 6, 1.5f, 1);
  } else {
    throw std::runtime_error("unknown preset '" + preset + "'");
  }

  std::ofstream csv;
  std::ostream* out = &std::cout;
  if (!out_csv.empty()) {
    csv.open(out_csv);
    if (!csv) throw std::runtime_error("cannot open output CSV: " + out_csv);
    out = &csv;
  }
  *out << "sigma,algo,seed,pq_th,epe_cm,latency_ms\n";

  for (double sigma : sigmas) {
    for (const std::string& algo : algos) {
      for (int s = 0; s < num_seeds; ++s) {
        SceneSpec spec = base_spec;
        spec.seed = base_spec.seed + static_cast<std::uint64_t>(s) * 7919;
        const Scene scene = generate_scene(spec);
        const Offsets pred_off =
            perturb_offsets(scene.gt_offsets, sigma, spec.seed ^ 0xabcdef);
        std::vector<Vec2> shifted(scene.thing_points.size());
        std::vector<std::uint16_t> cls(scene.thing_points.size());
        for (std::size_t i = 0; i < scene.thing_points.size(); ++i) {
          const std::int32_t p = scene.thing_points[i];
          shifted[i] = {scene.cloud.xyz()[p].x + pred_off[i].x,
                        scene.cloud.xyz()[p].y + pred_off[i].y};
          cls[i] = scene.gt.semantic[p];
        }

        std::vector<std::uint32_t> inst;
        double latency = 0.0;
        if (algo == "phnet") {
          const PointClusterResult res = cluster_shifted_points(shifted, cls, cfg);
          inst = res.instance;
          latency = res.times.total_ms;
        } else if (algo == "meanshift") {
          const auto t0 = Clock::now();
          inst = ids_from_baseline(
              mean_shift(shifted, static_cast<float>(bandwidth)));
          latency = ms_since(t0);
        } else if (algo == "dbscan") {
          const auto t0 = Clock::now();
          inst = ids_from_baseline(dbscan(shifted, static_cast<float>(eps), min_pts));
          latency = ms_since(t0);
        } else {
          throw std::runtime_error("unknown algorithm '" + algo + "'");
        }

        const PanopticLabeling pred = labeling_from_clusters(scene, inst, cfg.classes);
        const PanopticReport rep = panoptic_quality(pred, scene.gt, cfg.classes);
        const double epe = average_epe(pred_off, scene.gt_offsets);
        *out << sigma << "," << algo << "," << s << "," << rep.pq_th * 100.0 << ","
             << epe << "," << latency << "\n";
      }
    }
  }
  return 0;
}

int run_attn_check(int m, int k, std::uint64_t seed) {
  const int channels = 32, proj = 32, ff = 64, heads = 4;
  Rng rng(seed);
  AttentionWeights w = random_weights(channels, proj, ff, heads, rng);

  ThingFeatures feat;
  feat.features.resize(m, channels);
  feat.positions.resize(m);
  for (int i = 0; i < m; ++i) {
    for (int c = 0; c < channels; ++c) feat.features(i, c) = rng.normal();
    feat.positions[i] = {static_cast<float>(rng.uniform(-20.0, 20.0)),
                         static_cast<float>(rng.uniform(-20.0, 20.0)),
                         static_cast<float>(rng.uniform(-2.0, 2.0))};
  }

  const auto idx = knn_indices(feat.positions, k);
  const Matrix got = attention_forward(feat, idx, w);

  double max_rel = 0.0;
  if (k >= m) {
    const Matrix ref = dense_attention_reference(feat, w);
    const double scale = std::max(1e-12, ref.cwiseAbs().maxCoeff());
    max_rel = (got - ref).cwiseAbs().maxCoeff() / scale;
    std::printf("max deviation vs dense oracle: %.3e\n", max_rel);
  } else {
    std::printf("k < M: dense oracle not comparable; output norm %.6f\n", got.norm());
  }
  return (k >= m && max_rel >= 1e-6) ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudo-heatmap panoptic clustering pipeline"};
  app.require_subcommand(1);

  // cluster
  auto* cluster = app.add_subcommand("cluster", "run the clustering pipeline on a frame");
  std::string points, semantics, offsets, config, out_label, pgm;
  bool no_grouping = false;
  cluster->add_option("--points", points, "point file (.bin)")->required();
  cluster->add_option("--semantics", semantics, "semantic label file (.label)")->required();
  cluster->add_option("--offsets", offsets, "per-point 2D offset file")->required();
  cluster->add_option("--config", config, "pipeline config JSON");
  cluster->add_option("--out", out_label, "output label file")->required();
  cluster->add_option("--dump-heatmap", pgm, "write the pseudo heatmap as 16-bit PGM");
  cluster->add_flag("--no-grouping", no_grouping, "disable center grouping");

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate predictions against ground truth");
  std::string pred, gt, eval_config, json_out, csv_out;
  eval->add_option("--pred", pred, "predicted label file")->required();
  eval->add_option("--gt", gt, "ground-truth label file")->required();
  eval->add_option("--config", eval_config, "pipeline config JSON");
  eval->add_option("--json", json_out, "write report JSON here");
  eval->add_option("--csv", csv_out, "write per-class CSV here");

  // synth-bench
  auto* bench = app.add_subcommand("synth-bench", "noise x algorithm sweep on synthetic scenes");
  std::string spec_path, preset = "separated", bench_config, bench_csv;
  std::vector<double> sigmas = {0.0, 0.05, 0.1, 0.2, 0.4};
  std::vector<std::string> algos = {"phnet"};
  int num_seeds = 1, min_pts = 4;
  double bandwidth = 1.63, eps = 0.5;
  bench->add_option("--spec", spec_path, "scene spec JSON (overrides --preset)");
  bench->add_option("--preset", preset, "separated | bus | crowded");
  bench->add_option("--sigmas", sigmas, "offset noise std values, m")->delimiter(',');
  bench->add_option("--algos", algos, "phnet, meanshift, dbscan")->delimiter(',');
  bench->add_option("--seeds", num_seeds, "number of seeds per cell");
  bench->add_option("--config", bench_config, "pipeline config JSON");
  bench->add_option("--out", bench_csv, "output CSV (default stdout)");
  bench->add_option("--bandwidth", bandwidth, "mean-shift bandwidth, m");
  bench->add_option("--eps", eps, "DBSCAN eps, m");
  bench->add_option("--min-pts", min_pts, "DBSCAN min_pts");

  // attn-check
  auto* attn = app.add_subcommand("attn-check", "knn attention vs dense oracle");
  int m = 64, k = 64;
  std::uint64_t seed = 0;
  attn->add_option("--m", m, "number of elements");
  attn->add_option("--k", k, "neighborhood size");
  attn->add_option("--seed", seed, "weight/feature seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cluster) {
      return run_cluster(points, semantics, offsets, config, out_label, pgm, no_grouping);
    }
    if (*eval) return run_eval(pred, gt, eval_config, json_out, csv_out);
    if (*bench) {
      return run_synth_bench(spec_path, preset, sigmas, algos, num_seeds, bench_config,
                             bench_csv, bandwidth, eps, min_pts);
    }
    if (*attn) return run_attn_check(m, k, seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
