// Copyright 2026 the phclust authors
// SPDX-License-Identifier: Apache-2.0

#include "phclust/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "phclust/synth.hpp"
#include <json.hpp>

namespace phclust {

void PipelineConfig::validate() const {
  grid.validate();
  if (knn_k < 1) throw std::invalid_argument("PipelineConfig: knn_k must be positive");
}

PipelineConfig default_pipeline_config() {
  PipelineConfig cfg;
  cfg.grid.rho_min = 0.f;
  // covers the whole 50 m BEV square (50 * sqrt(2) < 72)
  cfg.grid.rho_max = 72.f;
  cfg.grid.z_min = -4.f;
  cfg.grid.z_max = 2.f;
  cfg.grid.n_rho = 240;
  cfg.grid.n_phi = 180;
  cfg.grid.n_z = 32;
  cfg.grid.bev_cell = 0.2f;
  cfg.grid.bev_extent = 50.f;
  cfg.grid.maxpool_window = 5;
  cfg.grid.avgpool_window = 5;
  cfg.grid.min_center_score = 1;
  cfg.classes = default_class_table();
  cfg.grouping_enabled = true;
  cfg.knn_k = 25;
  return cfg;
}

namespace {

using nlohmann::json;

}  // namespace

PipelineConfig config_from_json(const std::string& json_text) {
  const json j = json::parse(json_text);
  PipelineConfig cfg = default_pipeline_config();

  if (j.contains("grid")) {
    const json& g = j.at("grid");
    cfg.grid.rho_min = g.value("rho_min", cfg.grid.rho_min);
    cfg.grid.rho_max = g.value("rho_max", cfg.grid.rho_max);
    cfg.grid.z_min = g.value("z_min", cfg.grid.z_min);
    cfg.grid.z_max = g.value("z_max", cfg.grid.z_max);
    cfg.grid.n_rho = g.value("n_rho", cfg.grid.n_rho);
    cfg.grid.n_phi = g.value("n_phi", cfg.grid.n_phi);
    cfg.grid.n_z = g.value("n_z", cfg.grid.n_z);
    cfg.grid.bev_cell = g.value("bev_cell", cfg.grid.bev_cell);
    cfg.grid.bev_extent = g.value("bev_extent", cfg.grid.bev_extent);
    cfg.grid.maxpool_window = g.value("maxpool_window", cfg.grid.maxpool_window);
    cfg.grid.avgpool_window = g.value("avgpool_window", cfg.grid.avgpool_window);
    cfg.grid.min_center_score = g.value("min_center_score", cfg.grid.min_center_score);
  }
  if (j.contains("classes")) {
    const json& c = j.at("classes");
    std::set<std::uint16_t> thing, stuff;
    std::map<std::uint16_t, ClassSize> sizes;
    for (const json& t : c.value("thing", json::array())) {
      thing.insert(t.get<std::uint16_t>());
    }
    for (const json& s : c.value("stuff", json::array())) {
      stuff.insert(s.get<std::uint16_t>());
    }
    // bound to a local: items() would dangle on the c.value temporary
    const json sizes_obj = c.value("avg_size", json::object());
    for (const auto& [key, value] : sizes_obj.items()) {
      sizes[static_cast<std::uint16_t>(std::stoi(key))] = {
          value.at(0).get<float>(), value.at(1).get<float>(), value.at(2).get<float>()};
    }
    cfg.classes = ClassTable(std::move(thing), std::move(stuff), std::move(sizes));
  }
  cfg.grouping_enabled = j.value("grouping", cfg.grouping_enabled);
  cfg.knn_k = j.value("knn_k", cfg.knn_k);
  cfg.validate();
  return cfg;
}

std::string config_to_json(const PipelineConfig& cfg) {
  json j;
  json g;
  g["rho_min"] = cfg.grid.rho_min;
  g["rho_max"] = cfg.grid.rho_max;
  g["z_min"] = cfg.grid.z_min;
  g["z_max"] = cfg.grid.z_max;
  g["n_rho"] = cfg.grid.n_rho;
  g["n_phi"] = cfg.grid.n_phi;
  g["n_z"] = cfg.grid.n_z;
  g["bev_cell"] = cfg.grid.bev_cell;
  g["bev_extent"] = cfg.grid.bev_extent;
  g["maxpool_window"] = cfg.grid.maxpool_window;
  g["avgpool_window"] = cfg.grid.avgpool_window;
  g["min_center_score"] = cfg.grid.min_center_score;
  j["grid"] = g;

  json c;
  c["thing"] = json::array();
  for (std::uint16_t t : cfg.classes.thing_classes()) c["thing"].push_back(t);
  c["stuff"] = json::array();
  for (std::uint16_t s : cfg.classes.stuff_classes()) c["stuff"].push_back(s);
  json sizes = json::object();
  for (const auto& [cls, s] : cfg.classes.avg_sizes()) {
    sizes[std::to_string(cls)] = {s.width, s.length, s.height};
  }
  c["avg_size"] = sizes;
  j["classes"] = c;

  j["grouping"] = cfg.grouping_enabled;
  j["knn_k"] = cfg.knn_k;
  return j.dump(2);
}

PipelineConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return config_from_json(buf.str());
}

}  // namespace phclust
