#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "panelcheck/model.hpp"

namespace panelcheck {

struct MatchCounts {
  int tp = 0;
  int fp = 0;
  int fn = 0;

  friend bool operator==(const MatchCounts&, const MatchCounts&) = default;
};

struct PrPoint {
  double recall = 0.0;
  double precision = 0.0;

  friend bool operator==(const PrPoint&, const PrPoint&) = default;
};

/// Precision-recall curve swept over prediction scores, plus the area under
/// the right-max precision envelope (step integration).
struct PrCurve {
  std::vector<PrPoint> points;  // recall non-decreasing
  double area = 0.0;
};

struct LabelMetrics {
  std::string label;
  double ap = 0.0;
  double ar = 0.0;
  int gt_count = 0;
};

struct MeanMetrics {
  double map = 0.0;
  double mar = 0.0;
};

/// IoU threshold grid for AP/AR integration: 0.50 to 0.95 step 0.05.
inline constexpr std::array<double, 10> kDefaultIouGrid = {
    0.50, 0.55, 0.60, 0.65, 0.70, 0.75, 0.80, 0.85, 0.90, 0.95};

/// Intersection over union of two valid boxes.
double iou(const BBox& a, const BBox& b);

/// Greedy detection matching: predictions with score >= score_threshold, in
/// descending score (ties to smaller id), each claims the unmatched
/// same-label ground-truth box of highest IoU provided IoU > iou_threshold.
/// Predictions without a score are treated as score 1.
MatchCounts match(const Layout& gt, const Layout& pred, double iou_threshold,
                  double score_threshold);

/// Sweeps score thresholds over the distinct prediction scores, descending.
/// Precision/recall are 1 when their denominator is 0.
PrCurve pr_curve(const Layout& gt, const Layout& pred, double iou_threshold);

/// Per-label AP (mean PR-curve area over the IoU grid) and AR (mean maximum
/// recall over the grid), for every label with at least one ground-truth box.
std::vector<LabelMetrics> ap_ar(const Layout& gt, const Layout& pred,
                                std::span<const double> iou_grid = kDefaultIouGrid);

/// Unweighted means over labels with ground truth. Throws
/// std::invalid_argument when there is none.
MeanMetrics map_mar(const std::vector<LabelMetrics>& per_label);

}  // namespace panelcheck
