// Copyright 2026 the phclust authors
// SPDX-License-Identifier: Apache-2.0

#include "phclust/metrics.hpp"

#include <array>
#include <cmath>
#include <map>
#include <stdexcept>

namespace phclust {

namespace {

// Segment key: stuff classes collapse to one segment per class per frame.
using SegKey = std::pair<std::uint16_t, std::uint32_t>;

SegKey seg_key(std::uint16_t cls, std::uint32_t inst, const ClassTable& table) {
  return table.is_stuff(cls) ? SegKey{cls, 0} : SegKey{cls, inst};
}

}  // namespace

void PanopticEvaluator::add_frame(const PanopticLabeling& pred,
                                  const PanopticLabeling& gt) {
  pred.validate();
  gt.validate(static_cast<std::int64_t>(pred.size()));

  // points whose GT class is ignore are removed before any counting
  std::map<SegKey, std::int64_t> pred_size, gt_size;
  std::map<std::pair<SegKey, SegKey>, std::int64_t> overlap;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (gt.semantic[i] == kIgnoreClass) continue;
    const SegKey g = seg_key(gt.semantic[i], gt.instance[i], table_);
    ++gt_size[g];

    // semantic confusion counts (per-class tp / fp / fn)
    if (pred.semantic[i] == gt.semantic[i]) {
      ++conf_[gt.semantic[i]][0];
    } else {
      if (pred.semantic[i] != kIgnoreClass) ++conf_[pred.semantic[i]][1];
      ++conf_[gt.semantic[i]][2];
    }

    if (pred.semantic[i] == kIgnoreClass) continue;
    const SegKey p = seg_key(pred.semantic[i], pred.instance[i], table_);
    ++pred_size[p];
    ++overlap[{p, g}];
  }

  if (min_points_ > 0) {
    for (auto it = gt_size.begin(); it != gt_size.end();) {
      it = (it->second < min_points_) ? gt_size.erase(it) : std::next(it);
    }
  }

  std::map<SegKey, bool> gt_matched, pred_matched;
  for (const auto& [keys, inter] : overlap) {
    const auto& [p, g] = keys;
    if (p.first != g.first) continue;  // classes must agree
    if (!gt_size.count(g)) continue;   // filtered by min size
    const double uni = static_cast<double>(pred_size[p] + gt_size[g] - inter);
    const double iou = inter / uni;
    if (iou > 0.5) {  // strict: IoU of exactly 0.5 is not a match
      auto& st = stats_[p.first];
      ++st.tp;
      st.iou_sum += iou;
      gt_matched[g] = true;
      pred_matched[p] = true;
    }
  }
  for (const auto& [g, sz] : gt_size) {
    stats_[g.first].present_in_gt = true;
    if (!gt_matched.count(g)) ++stats_[g.first].fn;
  }
  for (const auto& [p, sz] : pred_size) {
    if (!pred_matched.count(p)) ++stats_[p.first].fp;
  }
}

PanopticReport PanopticEvaluator::report() const {
  PanopticReport rep;

  for (const auto& [cls, raw] : stats_) {
    if (!raw.present_in_gt) continue;  // FP-only classes do not enter aggregates
    ClassPQ c = raw;
    const double denom = c.tp + 0.5 * c.fp + 0.5 * c.fn;
    if (denom > 0.0) {
      c.pq = c.iou_sum / denom;
      c.rq = c.tp / denom;
    }
    c.sq = c.tp > 0 ? c.iou_sum / c.tp : 0.0;
    rep.per_class[cls] = c;
  }

  int n = 0, n_th = 0, n_st = 0;
  for (const auto& [cls, c] : rep.per_class) {
    rep.pq += c.pq;
    rep.sq += c.sq;
    rep.rq += c.rq;
    rep.pq_dagger += table_.is_stuff(cls) ? c.sq : c.pq;
    ++n;
    if (table_.is_thing(cls)) {
      rep.pq_th += c.pq;
      rep.sq_th += c.sq;
      rep.rq_th += c.rq;
      ++n_th;
    } else if (table_.is_stuff(cls)) {
      rep.pq_st += c.pq;
      rep.sq_st += c.sq;
      rep.rq_st += c.rq;
      ++n_st;
    }
  }
  if (n > 0) {
    rep.pq /= n;
    rep.sq /= n;
    rep.rq /= n;
    rep.pq_dagger /= n;
  }
  if (n_th > 0) {
    rep.pq_th /= n_th;
    rep.sq_th /= n_th;
    rep.rq_th /= n_th;
  }
  if (n_st > 0) {
    rep.pq_st /= n_st;
    rep.sq_st /= n_st;
    rep.rq_st /= n_st;
  }

  // semantic mIoU over classes present in GT
  int n_iou = 0;
  for (const auto& [cls, counts] : conf_) {
    const auto [tp, fp, fn] = counts;
    if (tp + fn == 0) continue;  // never in GT
    const double iou = (tp + fp + fn) > 0 ? static_cast<double>(tp) / (tp + fp + fn) : 0.0;
    rep.class_iou[cls] = iou;
    rep.miou += iou;
    ++n_iou;
  }
  if (n_iou > 0) rep.miou /= n_iou;
  return rep;
}

PanopticReport panoptic_quality(const PanopticLabeling& pred, const PanopticLabeling& gt,
                                const ClassTable& table, int min_segment_points) {
  PanopticEvaluator ev(table, min_segment_points);
  ev.add_frame(pred, gt);
  return ev.report();
}

IoUReport mean_iou(const std::vector<std::uint16_t>& pred_sem,
                   const std::vector<std::uint16_t>& gt_sem, const ClassTable& table) {
  (void)table;
  if (pred_sem.size() != gt_sem.size()) {
    throw std::invalid_argument("mean_iou: array length mismatch");
  }
  std::map<std::uint16_t, std::array<std::int64_t, 3>> conf;  // tp, fp, fn
  for (std::size_t i = 0; i < gt_sem.size(); ++i) {
    if (gt_sem[i] == kIgnoreClass) continue;
    if (pred_sem[i] == gt_sem[i]) {
      ++conf[gt_sem[i]][0];
    } else {
      if (pred_sem[i] != kIgnoreClass) ++conf[pred_sem[i]][1];
      ++conf[gt_sem[i]][2];
    }
  }
  IoUReport rep;
  int n = 0;
  for (const auto& [cls, counts] : conf) {
    const auto [tp, fp, fn] = counts;
    if (tp + fn == 0) continue;
    const double iou = static_cast<double>(tp) / (tp + fp + fn);
    rep.per_class[cls] = iou;
    rep.miou += iou;
    ++n;
  }
  if (n > 0) rep.miou /= n;
  return rep;
}

double average_epe(const Offsets& pred, const Offsets& gt) {
  if (pred.size() != gt.size()) {
    throw std::invalid_argument("average_epe: array length mismatch");
  }
  if (pred.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    sum += std::hypot(static_cast<double>(pred[i].x) - gt[i].x,
                      static_cast<double>(pred[i].y) - gt[i].y);
  }
  return sum / pred.size() * 100.0;  // m -> cm
}

}  // namespace phclust
