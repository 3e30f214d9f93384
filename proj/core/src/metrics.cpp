#include "panelcheck/metrics.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace panelcheck {

double iou(const BBox& a, const BBox& b) {
  const std::int64_t iw = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
  const std::int64_t ih = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
  if (iw <= 0 || ih <= 0) return 0.0;
  const std::int64_t inter = iw * ih;
  const std::int64_t area_a =
      static_cast<std::int64_t>(a.x2 - a.x1) * (a.y2 - a.y1);
  const std::int64_t area_b =
      static_cast<std::int64_t>(b.x2 - b.x1) * (b.y2 - b.y1);
  return static_cast<double>(inter) / static_cast<double>(area_a + area_b - inter);
}

namespace {

double score_of(const Component& c) {
  return c.score ? *c.score : 1.0;
}

std::vector<const Component*> sorted_predictions(const Layout& pred) {
  std::vector<const Component*> out;
  out.reserve(pred.components.size());
  for (const Component& c : pred.components) out.push_back(&c);
  std::sort(out.begin(), out.end(), [](const Component* a, const Component* b) {
    if (score_of(*a) != score_of(*b)) return score_of(*a) > score_of(*b);
    return a->id < b->id;
  });
  return out;
}

MatchCounts match_prepared(const Layout& gt,
                           const std::vector<const Component*>& preds_desc,
                           double iou_threshold, double score_threshold) {
  std::vector<char> gt_taken(gt.components.size(), false);
  int tp = 0, fp = 0;
  int kept = 0;
  for (const Component* p : preds_desc) {
    if (score_of(*p) < score_threshold) continue;
    ++kept;
    double best = 0.0;
    int best_gt = -1;
    for (std::size_t g = 0; g < gt.components.size(); ++g) {
      if (gt_taken[g]) continue;
      const Component& t = gt.components[g];
      if (t.label != p->label) continue;
      const double overlap = iou(t.box, p->box);
      if (overlap > best ||
          (best_gt >= 0 && overlap == best && t.id < gt.components[best_gt].id)) {
        best = overlap;
        best_gt = static_cast<int>(g);
      }
    }
    if (best_gt >= 0 && best > iou_threshold) {
      gt_taken[best_gt] = true;
      ++tp;
    } else {
      ++fp;
    }
  }
  return MatchCounts{tp, fp, static_cast<int>(gt.components.size()) - tp};
}

}  // namespace

MatchCounts match(const Layout& gt, const Layout& pred, double iou_threshold,
                  double score_threshold) {
  if (iou_threshold < 0.0 || iou_threshold >= 1.0) {
    throw std::invalid_argument("iou threshold must be in [0,1)");
  }
  if (score_threshold < 0.0 || score_threshold > 1.0) {
    throw std::invalid_argument("score threshold must be in [0,1]");
  }
  return match_prepared(gt, sorted_predictions(pred), iou_threshold, score_threshold);
}

PrCurve pr_curve(const Layout& gt, const Layout& pred, double iou_threshold) {
  const auto preds = sorted_predictions(pred);

  std::set<double, std::greater<double>> scores;
  for (const Component* p : preds) scores.insert(score_of(*p));

  PrCurve curve;
  for (const double s : scores) {
    const MatchCounts counts = match_prepared(gt, preds, iou_threshold, s);
    const double precision =
        counts.tp + counts.fp == 0 ? 1.0
                                   : static_cast<double>(counts.tp) / (counts.tp + counts.fp);
    const double recall =
        counts.tp + counts.fn == 0 ? 1.0
                                   : static_cast<double>(counts.tp) / (counts.tp + counts.fn);
    curve.points.push_back(PrPoint{recall, precision});
  }

  // area under the right-max precision envelope over unique recalls
  std::map<double, double> best_at;  // recall -> max precision at that recall
  for (const PrPoint& p : curve.points) {
    auto [it, inserted] = best_at.emplace(p.recall, p.precision);
    if (!inserted) it->second = std::max(it->second, p.precision);
  }
  double area = 0.0;
  double prev_recall = 0.0;
  double envelope = 0.0;
  // walk recalls descending to know the right-max, then integrate ascending
  std::vector<std::pair<double, double>> pts(best_at.begin(), best_at.end());
  for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
    envelope = std::max(envelope, it->second);
    it->second = envelope;
  }
  for (const auto& [recall, precision] : pts) {
    area += (recall - prev_recall) * precision;
    prev_recall = recall;
  }
  curve.area = area;
  return curve;
}

namespace {

Layout filter_label(const Layout& l, const std::string& label) {
  Layout out;
  out.width = l.width;
  out.height = l.height;
  out.membership = l.membership;
  for (const Component& c : l.components) {
    if (c.label == label) out.components.push_back(c);
  }
  return out;
}

}  // namespace

std::vector<LabelMetrics> ap_ar(const Layout& gt, const Layout& pred,
                                std::span<const double> iou_grid) {
  if (iou_grid.empty()) throw std::invalid_argument("empty IoU grid");

  std::set<std::string> labels;
  for (const Component& c : gt.components) labels.insert(c.label);

  std::vector<LabelMetrics> out;
  for (const std::string& label : labels) {
    const Layout gt_l = filter_label(gt, label);
    const Layout pred_l = filter_label(pred, label);
    double ap_sum = 0.0, ar_sum = 0.0;
    for (const double theta : iou_grid) {
      ap_sum += pr_curve(gt_l, pred_l, theta).area;
      const MatchCounts counts = match_prepared(gt_l, sorted_predictions(pred_l), theta, 0.0);
      const double recall =
          counts.tp + counts.fn == 0
              ? 1.0
              : static_cast<double>(counts.tp) / (counts.tp + counts.fn);
      ar_sum += recall;
    }
    out.push_back(LabelMetrics{label, ap_sum / iou_grid.size(),
                               ar_sum / iou_grid.size(),
                               static_cast<int>(gt_l.components.size())});
  }
  return out;
}

MeanMetrics map_mar(const std::vector<LabelMetrics>& per_label) {
  double ap = 0.0, ar = 0.0;
  int n = 0;
  for (const LabelMetrics& m : per_label) {
    if (m.gt_count < 1) continue;
    ap += m.ap;
    ar += m.ar;
    ++n;
  }
  if (n == 0) throw std::invalid_argument("no label has ground truth");
  return MeanMetrics{ap / n, ar / n};
}

}  // namespace panelcheck
