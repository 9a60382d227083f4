// Copyright 2026 the phclust authors
// SPDX-License-Identifier: Apache-2.0

#include "phclust/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "phclust/rng.hpp"
#include <json.hpp>

namespace phclust {

void SceneSpec::validate() const {
  if (!(extent > 0.f)) throw std::invalid_argument("SceneSpec: extent must be positive");
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const InstanceSpec& inst = instances[i];
    if (inst.cls == kIgnoreClass) {
      throw std::invalid_argument("SceneSpec: instance class cannot be the ignore class");
    }
    if (!(inst.width > 0.f && inst.length > 0.f) || inst.point_count <= 0) {
      throw std::invalid_argument("SceneSpec: non-positive size or count at instance " +
                                  std::to_string(i));
    }
    if (std::abs(inst.position.x) > extent || std::abs(inst.position.y) > extent) {
      throw std::invalid_argument("SceneSpec: instance " + std::to_string(i) +
                                  " outside extent");
    }
    if (!(inst.z_high > inst.z_low)) {
      throw std::invalid_argument("SceneSpec: z range empty at instance " +
                                  std::to_string(i));
    }
  }
  for (const auto& [cls, n] : stuff_points) {
    if (n < 0) throw std::invalid_argument("SceneSpec: negative stuff point count");
  }
}

namespace {

Vec2 sample_instance_point(const InstanceSpec& inst, int point_index, Rng& rng) {
  const float hl = inst.length / 2.f;
  const float hw = inst.width / 2.f;
  switch (inst.scatter) {
    case ScatterModel::kUniform:
      return {inst.position.x + static_cast<float>(rng.uniform(-hl, hl)),
              inst.position.y + static_cast<float>(rng.uniform(-hw, hw))};
    case ScatterModel::kPartial:
      // only one long side of the footprint is visible to the sensor
      return {inst.position.x + static_cast<float>(rng.uniform(-hl, hl)),
              inst.position.y + static_cast<float>(rng.uniform(hw * 0.6, hw))};
    case ScatterModel::kClumps: {
      const int clumps = std::max(1, inst.clump_count);
      const int c = point_index % clumps;
      // clump centers evenly spaced along the long axis, on the visible side
      const float cx = inst.position.x - hl + inst.length * (c + 0.5f) / clumps;
      const float cy = inst.position.y + hw * 0.8f;
      return {cx + static_cast<float>(rng.normal(0.0, inst.clump_sigma)),
              cy + static_cast<float>(rng.normal(0.0, inst.clump_sigma))};
    }
  }
  throw std::logic_error("unknown scatter model");
}

bool near_any_footprint(const Vec2& p, const SceneSpec& spec) {
  for (const InstanceSpec& inst : spec.instances) {
    const float hx = inst.length / 2.f + spec.instance_margin;
    const float hy = inst.width / 2.f + spec.instance_margin;
    if (std::abs(p.x - inst.position.x) <= hx && std::abs(p.y - inst.position.y) <= hy) {
      return true;
    }
  }
  return false;
}

}  // namespace

Scene generate_scene(const SceneSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  Scene scene;

  std::vector<Vec3> xyz;
  PanopticLabeling gt;

  for (std::size_t i = 0; i < spec.instances.size(); ++i) {
    const InstanceSpec& inst = spec.instances[i];
    const std::uint32_t id = static_cast<std::uint32_t>(i) + 1;
    const std::size_t first = xyz.size();
    for (int p = 0; p < inst.point_count; ++p) {
      const Vec2 xy = sample_instance_point(inst, p, rng);
      const float z = static_cast<float>(rng.uniform(inst.z_low, inst.z_high));
      xyz.push_back({xy.x, xy.y, z});
      gt.semantic.push_back(inst.cls);
      gt.instance.push_back(id);
    }
    // instance center from the sampled points
    Vec2 center;
    if (spec.center_mode == CenterMode::kMassCenter) {
      double sx = 0.0, sy = 0.0;
      for (std::size_t p = first; p < xyz.size(); ++p) {
        sx += xyz[p].x;
        sy += xyz[p].y;
      }
      center = {static_cast<float>(sx / inst.point_count),
                static_cast<float>(sy / inst.point_count)};
    } else {
      float x0 = std::numeric_limits<float>::max(), x1 = -x0;
      float y0 = x0, y1 = -x0;
      for (std::size_t p = first; p < xyz.size(); ++p) {
        x0 = std::min(x0, xyz[p].x);
        x1 = std::max(x1, xyz[p].x);
        y0 = std::min(y0, xyz[p].y);
        y1 = std::max(y1, xyz[p].y);
      }
      center = {(x0 + x1) / 2.f, (y0 + y1) / 2.f};
    }
    scene.centers[id] = center;
  }

  for (const auto& [cls, n] : spec.stuff_points) {
    int placed = 0;
    std::uint64_t attempts = 0;
    const std::uint64_t max_attempts = static_cast<std::uint64_t>(n) * 1000 + 1000;
    while (placed < n) {
      if (++attempts > max_attempts) {
        throw std::runtime_error("generate_scene: instance margins leave no room "
                                 "for stuff points");
      }
      const Vec2 p = {static_cast<float>(rng.uniform(-spec.extent, spec.extent)),
                      static_cast<float>(rng.uniform(-spec.extent, spec.extent))};
      if (near_any_footprint(p, spec)) continue;
      xyz.push_back({p.x, p.y, static_cast<float>(rng.uniform(-2.0, 0.0))});
      gt.semantic.push_back(cls);
      gt.instance.push_back(kNoInstance);
      ++placed;
    }
  }

  scene.cloud = PointCloud(std::move(xyz));
  scene.gt = std::move(gt);
  for (std::size_t i = 0; i < scene.gt.size(); ++i) {
    if (scene.gt.instance[i] != kNoInstance) {
      scene.thing_points.push_back(static_cast<std::int32_t>(i));
      const Vec2 c = scene.centers.at(scene.gt.instance[i]);
      scene.gt_offsets.push_back(
          {c.x - scene.cloud.xyz()[i].x, c.y - scene.cloud.xyz()[i].y});
    }
  }
  return scene;
}

Offsets perturb_offsets(const Offsets& off, double sigma, std::uint64_t seed) {
  if (sigma < 0.0) throw std::invalid_argument("perturb_offsets: sigma must be >= 0");
  if (sigma == 0.0) return off;
  Rng rng(seed);
  Offsets out(off.size());
  for (std::size_t i = 0; i < off.size(); ++i) {
    out[i] = {off[i].x + static_cast<float>(rng.normal(0.0, sigma)),
              off[i].y + static_cast<float>(rng.normal(0.0, sigma))};
  }
  return out;
}

ClassTable default_class_table() {
  // thing: 10 car, 11 pedestrian, 12 bus; stuff: 1 road, 2 vegetation, 3 building.
  // Car/pedestrian sizes are the commonly used KITTI annotation averages.
  return ClassTable({10, 11, 12}, {1, 2, 3},
                    {{10, {1.63f, 3.88f, 1.53f}},
                     {11, {0.60f, 0.80f, 1.77f}},
                     {12, {2.90f, 11.0f, 3.50f}}});
}

SceneSpec separated_preset(int num_instances, float min_gap, std::uint64_t seed) {
  if (num_instances < 1) {
    throw std::invalid_argument("separated_preset: need at least one instance");
  }
  SceneSpec spec;
  spec.seed = seed;
  spec.extent = 50.f;
  spec.instance_margin = 2.5f;

  // alternate cars and pedestrians on a jittered lattice; the spacing keeps
  // every pairwise footprint gap above min_gap
  const float max_footprint = 4.f;
  const float spacing = min_gap + max_footprint + 2.f;
  // columns span -40..44.5 at most (jitter included), so up to
  // floor(84.5 / spacing) + 1 instances fit per row
  const int per_row = std::max(1, static_cast<int>(std::floor(84.5f / spacing)) + 1);
  Rng rng(seed ^ 0x5eedf00dull);
  for (int i = 0; i < num_instances; ++i) {
    InstanceSpec inst;
    const bool car = (i % 2 == 0);
    inst.cls = car ? 10 : 11;
    inst.width = car ? 1.7f : 0.5f;
    inst.length = car ? 4.0f : 0.5f;
    inst.point_count = car ? 250 : 150;
    inst.z_low = -1.f;
    inst.z_high = car ? 0.5f : 0.8f;
    const int r = i / per_row, c = i % per_row;
    inst.position = {-40.f + spacing * c + static_cast<float>(rng.uniform(-0.5, 0.5)),
                     -40.f + spacing * r + static_cast<float>(rng.uniform(-0.5, 0.5))};
    if (std::abs(inst.position.x) > 45.f || std::abs(inst.position.y) > 45.f) {
      throw std::invalid_argument("separated_preset: too many instances for the extent");
    }
    spec.instances.push_back(inst);
  }
  spec.stuff_points[1] = 4000;  // road
  spec.stuff_points[2] = 1500;  // vegetation
  return spec;
}

SceneSpec partial_view_bus_preset(std::uint64_t seed) {
  SceneSpec spec;
  spec.seed = seed;
  spec.extent = 50.f;
  spec.instance_margin = 2.5f;

  InstanceSpec bus;
  bus.cls = 12;
  bus.width = 2.9f;
  bus.length = 11.f;
  bus.position = {12.f, 6.f};
  bus.point_count = 480;
  bus.scatter = ScatterModel::kClumps;
  bus.clump_count = 4;  // one scanned patch per ~2.75 m of body
  bus.clump_sigma = 0.12f;
  bus.z_low = -1.f;
  bus.z_high = 2.f;
  spec.instances.push_back(bus);

  spec.stuff_points[1] = 3000;
  return spec;
}

SceneSpec crowded_pedestrian_preset(int rows, int cols, float spacing,
                                    std::uint64_t seed) {
  if (rows < 1 || cols < 1 || !(spacing > 0.f)) {
    throw std::invalid_argument("crowded_pedestrian_preset: bad lattice parameters");
  }
  SceneSpec spec;
  spec.seed = seed;
  spec.extent = 50.f;
  spec.instance_margin = 0.f;  // crowded on purpose

  const float ox = 10.f - spacing * (cols - 1) / 2.f;
  const float oy = -spacing * (rows - 1) / 2.f;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      InstanceSpec ped;
      ped.cls = 11;
      ped.width = 0.45f;
      ped.length = 0.45f;
      ped.point_count = 120;
      ped.z_low = -1.f;
      ped.z_high = 0.8f;
      ped.position = {ox + spacing * c, oy + spacing * r};
      spec.instances.push_back(ped);
    }
  }
  return spec;
}

namespace {

using nlohmann::json;

const char* scatter_name(ScatterModel m) {
  switch (m) {
    case ScatterModel::kUniform: return "uniform";
    case ScatterModel::kPartial: return "partial";
    case ScatterModel::kClumps: return "clumps";
  }
  return "uniform";
}

ScatterModel scatter_from(const std::string& s) {
  if (s == "uniform") return ScatterModel::kUniform;
  if (s == "partial") return ScatterModel::kPartial;
  if (s == "clumps") return ScatterModel::kClumps;
  throw std::invalid_argument("SceneSpec: unknown scatter model '" + s + "'");
}

}  // namespace

SceneSpec scene_spec_from_json(const std::string& json_text) {
  const json j = json::parse(json_text);
  SceneSpec spec;
  spec.extent = j.value("extent", 50.f);
  spec.instance_margin = j.value("instance_margin", 2.5f);
  spec.seed = j.value("seed", std::uint64_t{0});
  const std::string mode = j.value("center_mode", "axis_aligned");
  if (mode == "mass") {
    spec.center_mode = CenterMode::kMassCenter;
  } else if (mode == "axis_aligned") {
    spec.center_mode = CenterMode::kAxisAlignedBox;
  } else {
    throw std::invalid_argument("SceneSpec: unknown center_mode '" + mode + "'");
  }
  for (const json& ji : j.value("instances", json::array())) {
    InstanceSpec inst;
    inst.cls = ji.at("class").get<std::uint16_t>();
    inst.width = ji.at("width").get<float>();
    inst.length = ji.at("length").get<float>();
    inst.position = {ji.at("x").get<float>(), ji.at("y").get<float>()};
    inst.point_count = ji.at("points").get<int>();
    inst.scatter = scatter_from(ji.value("scatter", "uniform"));
    inst.clump_count = ji.value("clumps", 4);
    inst.clump_sigma = ji.value("clump_sigma", 0.15f);
    inst.z_low = ji.value("z_low", -1.f);
    inst.z_high = ji.value("z_high", 1.f);
    spec.instances.push_back(inst);
  }
  // bound to a local: items() would dangle on the j.value temporary
  const json stuff_obj = j.value("stuff", json::object());
  for (const auto& [key, value] : stuff_obj.items()) {
    spec.stuff_points[static_cast<std::uint16_t>(std::stoi(key))] = value.get<int>();
  }
  spec.validate();
  return spec;
}

std::string scene_spec_to_json(const SceneSpec& spec) {
  json j;
  j["extent"] = spec.extent;
  j["instance_margin"] = spec.instance_margin;
  j["seed"] = spec.seed;
  j["center_mode"] =
      spec.center_mode == CenterMode::kMassCenter ? "mass" : "axis_aligned";
  j["instances"] = json::array();
  for (const InstanceSpec& inst : spec.instances) {
    json ji;
    ji["class"] = inst.cls;
    ji["width"] = inst.width;
    ji["length"] = inst.length;
    ji["x"] = inst.position.x;
    ji["y"] = inst.position.y;
    ji["points"] = inst.point_count;
    ji["scatter"] = scatter_name(inst.scatter);
    ji["clumps"] = inst.clump_count;
    ji["clump_sigma"] = inst.clump_sigma;
    ji["z_low"] = inst.z_low;
    ji["z_high"] = inst.z_high;
    j["instances"].push_back(ji);
  }
  json stuff = json::object();
  for (const auto& [cls, n] : spec.stuff_points) {
    stuff[std::to_string(cls)] = n;
  }
  j["stuff"] = stuff;
  return j.dump(2);
}

}  // namespace phclust
