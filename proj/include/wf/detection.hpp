#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wf/types.hpp"

namespace wf {

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  bool operator==(const Point3&) const = default;
};

/// One measurement frame: detection points in sensor coordinates at a
/// discrete time instance.
struct Frame {
  std::int64_t frame_index = 0;
  double timestamp_s = 0.0;
  std::vector<Point3> points;
  bool operator==(const Frame&) const = default;
};

/// Axis-aligned analysis volume around the target position: x along the
/// boresight centered at center_distance_m (extent length_m), y lateral
/// centered at 0 (extent width_m), z from the ground up to height_m.
/// Margins widen the box to absorb point spread at range.
struct TargetBox {
  double center_distance_m = 0.0;
  double width_m = 0.4;
  double length_m = 0.3;
  double height_m = 1.8;
  double lateral_margin_m = 0.2;
  double vertical_margin_m = 0.2;

  bool contains(const Point3& p) const;
  void validate() const;
};

TargetBox box_for_target(const TargetSpec& target, double center_distance_m,
                         double lateral_margin_m = 0.2, double vertical_margin_m = 0.2);

/// Keeps only recurring points: a point of frame i survives iff some point
/// of the immediately preceding frame lies within epsilon_m (Euclidean).
/// The first frame has no predecessor and is dropped from the output.
std::vector<Frame> filter_recurring(const std::vector<Frame>& frames,
                                    double epsilon_m = 0.1);

/// Per-frame count of points inside the box.
std::vector<int> count_in_box(const std::vector<Frame>& frames, const TargetBox& box);

struct CountStats {
  double mean = 0.0;
  double stddev = 0.0;  // population standard deviation
};

CountStats summarize(const std::vector<int>& counts);

/// Subtracts the free-space (no target) count from the target-run count,
/// clamped at zero. Used for lidar only.
double backscatter_compensate(double target_n_bar, double freespace_n_bar);

/// Detection condition: mean recurring count meets the per-sensor minimum.
bool is_detected(double n_bar, int min_points);

struct SummaryRow {
  double distance_m = 0.0;
  double n_bar = 0.0;
  double sigma = 0.0;
  bool excluded = false;
  bool operator==(const SummaryRow&) const = default;
};

/// Mean/sigma of recurring detection counts per measured position for one
/// sensor under one weather condition. Rows are sorted by distance, one
/// row per distinct position.
struct MeasurementSummary {
  SensorKind sensor = SensorKind::Radar;
  WeatherCondition condition;
  std::vector<SummaryRow> rows;
  bool operator==(const MeasurementSummary&) const = default;
};

/// Measured maximum detection distance as an interval: lower_m is the
/// furthest position satisfying the detection condition, upper_m the next
/// measured position (nullopt when the furthest position is the last one).
struct DetectionInterval {
  double lower_m = 0.0;
  std::optional<double> upper_m;
  bool operator==(const DetectionInterval&) const = default;
};

/// Excluded rows are skipped entirely. Returns nullopt when no position
/// satisfies the detection condition.
std::optional<DetectionInterval> max_detected_distance(const MeasurementSummary& summary,
                                                       int min_points);

/// Full ingestion pipeline for one frame stream: recurring-point filter,
/// per-position box counts, mean/sigma, and (lidar with a free-space run)
/// backscatter compensation of the mean.
struct IngestOptions {
  double epsilon_m = 0.1;
  std::vector<double> positions_m = {3, 9, 15, 21, 27, 33, 39, 44};
  double lateral_margin_m = 0.2;
  double vertical_margin_m = 0.2;
};

MeasurementSummary ingest_frames(const std::vector<Frame>& frames,
                                 const std::vector<Frame>* freespace_frames,
                                 SensorKind sensor, const WeatherCondition& condition,
                                 const TargetSpec& target, const IngestOptions& options = {});

}  // namespace wf
