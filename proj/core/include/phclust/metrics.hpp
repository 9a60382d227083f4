// Copyright 2026 the phclust authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PHCLUST_METRICS_HPP
#define PHCLUST_METRICS_HPP

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "phclust/types.hpp"

namespace phclust {

struct ClassPQ {
  double pq = 0.0;
  double sq = 0.0;
  double rq = 0.0;
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  double iou_sum = 0.0;
  bool present_in_gt = false;
};

/// Panoptic metric report; fractions in [0, 1]. Aggregates are unweighted
/// means over classes present in the accumulated ground truth.
struct PanopticReport {
  std::map<std::uint16_t, ClassPQ> per_class;
  std::map<std::uint16_t, double> class_iou;  // semantic IoU per class
  double pq = 0.0, sq = 0.0, rq = 0.0, pq_dagger = 0.0;
  double pq_th = 0.0, sq_th = 0.0, rq_th = 0.0;
  double pq_st = 0.0, sq_st = 0.0, rq_st = 0.0;
  double miou = 0.0;
};

/// Multi-frame PQ/SQ/RQ/PQ-dagger/mIoU accumulator. Matching: segments of the
/// same class match iff IoU > 0.5 (strict), which makes matches unique.
/// Stuff classes form one segment per class per frame; points whose GT class
/// is the ignore class are removed before any counting. Segments with fewer
/// than min_segment_points GT points are dropped from the GT side (default 0,
/// disabled).
class PanopticEvaluator {
 public:
  explicit PanopticEvaluator(const ClassTable& table, int min_segment_points = 0)
      : table_(table), min_points_(min_segment_points) {}

  void add_frame(const PanopticLabeling& pred, const PanopticLabeling& gt);
  PanopticReport report() const;

 private:
  ClassTable table_;
  int min_points_ = 0;
  std::map<std::uint16_t, ClassPQ> stats_;
  std::map<std::uint16_t, std::array<std::int64_t, 3>> conf_;  // tp, fp, fn per class (semantic)
};

/// Single-frame convenience wrapper.
PanopticReport panoptic_quality(const PanopticLabeling& pred, const PanopticLabeling& gt,
                                const ClassTable& table, int min_segment_points = 0);

struct IoUReport {
  std::map<std::uint16_t, double> per_class;
  double miou = 0.0;
};

/// Semantic IoU per class present in GT (ignore class excluded) and its mean.
IoUReport mean_iou(const std::vector<std::uint16_t>& pred_sem,
                   const std::vector<std::uint16_t>& gt_sem, const ClassTable& table);

/// Mean Euclidean norm of (pred - gt) over the cartesian BEV plane, in cm.
double average_epe(const Offsets& pred, const Offsets& gt);

}  // namespace phclust

#endif
