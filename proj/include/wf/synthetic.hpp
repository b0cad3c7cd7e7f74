#pragma once

#include <cstdint>
#include <vector>

#include "wf/detection.hpp"
#include "wf/types.hpp"

namespace wf {

/// Synthetic frame-stream generator for tests and demos. A fixed grid of
/// cluster points is planted inside the target box at every position; each
/// point then drops out independently per frame with probability dropout.
/// Background noise points (Poisson count per frame, uniform over the test
/// volume, never inside a target box) are redrawn every frame so they do
/// not recur.
struct SyntheticOptions {
  std::uint64_t seed = 0;
  int frame_count = 50;
  double frame_dt_s = 0.1;
  std::vector<double> positions_m = {3, 9, 15, 21, 27, 33, 39, 44};
  int cluster_size = 25;               // used when cluster_sizes is empty
  std::vector<int> cluster_sizes;      // per position, optional
  double dropout = 0.0;                // per-point per-frame, in [0, 1)
  double noise_rate = 0.0;             // expected background points per frame
  double lateral_margin_m = 0.2;
  double vertical_margin_m = 0.2;
};

/// Maximum cluster size supported by the fixed in-box point grid.
inline constexpr int kMaxClusterSize = 40;

/// Per-position ground truth: planted size, the expected mean recurring
/// count cluster_size * (1 - dropout)^2, and the realized mean of points
/// present in consecutive frames (what a lossless pipeline reports).
struct SidecarRow {
  double distance_m = 0.0;
  int cluster_size = 0;
  double expected_recurring = 0.0;
  double realized_recurring_mean = 0.0;
};

struct SyntheticStream {
  std::vector<Frame> frames;
  std::vector<SidecarRow> truth;
};

SyntheticStream generate_synthetic(const TargetSpec& target,
                                   const WeatherCondition& condition,
                                   const SyntheticOptions& options = {});

}  // namespace wf
