// Copyright 2026 the phclust authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PHCLUST_CONFIG_HPP
#define PHCLUST_CONFIG_HPP

#include <string>

#include "phclust/types.hpp"

namespace phclust {

/// Everything a pipeline run needs, loadable from one JSON document. All
/// hyperparameters live here; there are no hidden defaults outside this
/// schema.
struct PipelineConfig {
  GridConfig grid;
  ClassTable classes;
  bool grouping_enabled = true;
  int knn_k = 25;  // knn-attention neighborhood size

  void validate() const;
};

PipelineConfig default_pipeline_config();

PipelineConfig config_from_json(const std::string& json_text);
std::string config_to_json(const PipelineConfig& cfg);

PipelineConfig load_config_file(const std::string& path);

}  // namespace phclust

#endif
