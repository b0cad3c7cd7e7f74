#include "wf/detection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wf {

bool TargetBox::contains(const Point3& p) const {
  const double half_length = length_m / 2.0 + lateral_margin_m;
  const double half_width = width_m / 2.0 + lateral_margin_m;
  return p.x >= center_distance_m - half_length && p.x <= center_distance_m + half_length &&
         p.y >= -half_width && p.y <= half_width && p.z >= 0.0 &&
         p.z <= height_m + vertical_margin_m;
}

void TargetBox::validate() const {
  if (!(width_m > 0.0 && length_m > 0.0 && height_m > 0.0))
    throw std::domain_error("target box extents must be > 0 m");
  if (lateral_margin_m < 0.0 || vertical_margin_m < 0.0)
    throw std::domain_error("target box margins must be >= 0 m");
}

TargetBox box_for_target(const TargetSpec& target, double center_distance_m,
                         double lateral_margin_m, double vertical_margin_m) {
  TargetBox box;
  box.center_distance_m = center_distance_m;
  box.width_m = target.width_m;
  box.length_m = target.length_m;
  box.height_m = target.height_m;
  box.lateral_margin_m = lateral_margin_m;
  box.vertical_margin_m = vertical_margin_m;
  box.validate();
  return box;
}

std::vector<Frame> filter_recurring(const std::vector<Frame>& frames, double epsilon_m) {
  if (!(epsilon_m > 0.0))
    throw std::domain_error("filter_recurring: epsilon must be > 0 m");
  if (frames.size() < 2)
    throw std::invalid_argument("filter_recurring: need at least 2 frames");

  std::vector<Frame> output;
  output.reserve(frames.size() - 1);
  std::vector<Point3> previous;
  for (size_t i = 1; i < frames.size(); ++i) {
    previous = frames[i - 1].points;
    std::sort(previous.begin(), previous.end(),
              [](const Point3& a, const Point3& b) { return a.x < b.x; });

    Frame kept{frames[i].frame_index, frames[i].timestamp_s, {}};
    for (const Point3& p : frames[i].points) {
      const auto first = std::lower_bound(
          previous.begin(), previous.end(), p.x - epsilon_m,
          [](const Point3& q, double value) { return q.x < value; });
      bool recurring = false;
      for (auto it = first; it != previous.end() && it->x <= p.x + epsilon_m; ++it) {
        const double dx = p.x - it->x;
        const double dy = p.y - it->y;
        const double dz = p.z - it->z;
        if (dx * dx + dy * dy + dz * dz <= epsilon_m * epsilon_m) {
          recurring = true;
          break;
        }
      }
      if (recurring) kept.points.push_back(p);
    }
    output.push_back(std::move(kept));
  }
  return output;
}

std::vector<int> count_in_box(const std::vector<Frame>& frames, const TargetBox& box) {
  box.validate();
  std::vector<int> counts;
  counts.reserve(frames.size());
  for (const Frame& frame : frames) {
    int n = 0;
    for (const Point3& p : frame.points)
      if (box.contains(p)) ++n;
    counts.push_back(n);
  }
  return counts;
}

CountStats summarize(const std::vector<int>& counts) {
  if (counts.empty()) throw std::invalid_argument("summarize: no counts");
  double sum = 0.0;
  for (int c : counts) sum += c;
  const double mean = sum / static_cast<double>(counts.size());
  double sq = 0.0;
  for (int c : counts) {
    const double d = c - mean;
    sq += d * d;
  }
  return {mean, std::sqrt(sq / static_cast<double>(counts.size()))};
}

double backscatter_compensate(double target_n_bar, double freespace_n_bar) {
  if (target_n_bar < 0.0 || freespace_n_bar < 0.0)
    throw std::domain_error("backscatter_compensate: counts must be >= 0");
  return std::max(0.0, target_n_bar - freespace_n_bar);
}

bool is_detected(double n_bar, int min_points) {
  if (min_points < 1) throw std::domain_error("is_detected: min_points must be >= 1");
  return n_bar >= static_cast<double>(min_points);
}

std::optional<DetectionInterval> max_detected_distance(const MeasurementSummary& summary,
                                                       int min_points) {
  for (size_t i = 1; i < summary.rows.size(); ++i) {
    if (!(summary.rows[i].distance_m > summary.rows[i - 1].distance_m))
      throw std::invalid_argument(
          "max_detected_distance: rows must be sorted by distance, one per position");
  }

  std::optional<size_t> last_detected;
  for (size_t i = 0; i < summary.rows.size(); ++i) {
    const SummaryRow& row = summary.rows[i];
    if (row.excluded) continue;
    if (is_detected(row.n_bar, min_points)) last_detected = i;
  }
  if (!last_detected) return std::nullopt;

  DetectionInterval interval{summary.rows[*last_detected].distance_m, std::nullopt};
  for (size_t i = *last_detected + 1; i < summary.rows.size(); ++i) {
    if (summary.rows[i].excluded) continue;
    interval.upper_m = summary.rows[i].distance_m;
    break;
  }
  return interval;
}

MeasurementSummary ingest_frames(const std::vector<Frame>& frames,
                                 const std::vector<Frame>* freespace_frames,
                                 SensorKind sensor, const WeatherCondition& condition,
                                 const TargetSpec& target, const IngestOptions& options) {
  condition.validate();
  target.validate();
  if (freespace_frames && sensor == SensorKind::Radar)
    throw std::invalid_argument("backscatter compensation is not used for radar");
  if (options.positions_m.empty())
    throw std::invalid_argument("ingest_frames: no target positions given");

  const std::vector<Frame> recurring = filter_recurring(frames, options.epsilon_m);
  std::vector<Frame> freespace_recurring;
  if (freespace_frames)
    freespace_recurring = filter_recurring(*freespace_frames, options.epsilon_m);

  MeasurementSummary summary{sensor, condition, {}};
  for (double distance : options.positions_m) {
    const TargetBox box = box_for_target(target, distance, options.lateral_margin_m,
                                         options.vertical_margin_m);
    const CountStats stats = summarize(count_in_box(recurring, box));
    double n_bar = stats.mean;
    if (freespace_frames) {
      const CountStats freespace = summarize(count_in_box(freespace_recurring, box));
      n_bar = backscatter_compensate(n_bar, freespace.mean);
    }
    summary.rows.push_back({distance, n_bar, stats.stddev, false});
  }
  std::sort(summary.rows.begin(), summary.rows.end(),
            [](const SummaryRow& a, const SummaryRow& b) { return a.distance_m < b.distance_m; });
  return summary;
}

}  // namespace wf
