#include "wf/synthetic.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace wf {

namespace {

/// Fixed slot grid inside the core target volume. Slot spacing stays above
/// the default recurring-point tolerance so a dropped-out point cannot be
/// rescued by a neighbour, and slots stay far enough inside the counting
/// box that outside noise cannot match them either.
std::vector<Point3> cluster_slots(double center_distance_m, int count) {
  static constexpr double kOffsetsX[] = {-0.08, 0.08};
  static constexpr double kOffsetsY[] = {-0.18, -0.06, 0.06, 0.18};
  static constexpr double kOffsetsZ[] = {0.3, 0.65, 1.0, 1.35, 1.7};
  std::vector<Point3> slots;
  slots.reserve(kMaxClusterSize);
  for (double z : kOffsetsZ)
    for (double y : kOffsetsY)
      for (double x : kOffsetsX)
        slots.push_back({center_distance_m + x, y, z});
  slots.resize(static_cast<size_t>(count));
  return slots;
}

}  // namespace

SyntheticStream generate_synthetic(const TargetSpec& target,
                                   const WeatherCondition& condition,
                                   const SyntheticOptions& options) {
  target.validate();
  condition.validate();
  if (!(options.dropout >= 0.0 && options.dropout < 1.0))
    throw std::invalid_argument("generate_synthetic: dropout must be in [0, 1)");
  if (options.noise_rate < 0.0)
    throw std::invalid_argument("generate_synthetic: noise rate must be >= 0");
  if (options.frame_count < 2)
    throw std::invalid_argument("generate_synthetic: need at least 2 frames");
  if (options.positions_m.empty())
    throw std::invalid_argument("generate_synthetic: no positions");
  if (!options.cluster_sizes.empty() &&
      options.cluster_sizes.size() != options.positions_m.size())
    throw std::invalid_argument(
        "generate_synthetic: cluster_sizes must match positions");

  const size_t position_count = options.positions_m.size();
  for (size_t p = 1; p < position_count; ++p) {
    if (!(options.positions_m[p] - options.positions_m[p - 1] >= 1.0))
      throw std::invalid_argument(
          "generate_synthetic: positions must be ascending, at least 1 m apart");
  }
  std::vector<int> sizes = options.cluster_sizes;
  if (sizes.empty()) sizes.assign(position_count, options.cluster_size);
  for (int size : sizes)
    if (size < 1 || size > kMaxClusterSize)
      throw std::invalid_argument("generate_synthetic: cluster size must be in [1, 40]");

  std::vector<std::vector<Point3>> clusters(position_count);
  std::vector<TargetBox> boxes;
  for (size_t p = 0; p < position_count; ++p) {
    clusters[p] = cluster_slots(options.positions_m[p], sizes[p]);
    boxes.push_back(box_for_target(target, options.positions_m[p],
                                   options.lateral_margin_m, options.vertical_margin_m));
  }

  const double max_position =
      *std::max_element(options.positions_m.begin(), options.positions_m.end());

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::poisson_distribution<int> noise_count(options.noise_rate);
  std::uniform_real_distribution<double> noise_x(0.0, max_position + 6.0);
  std::uniform_real_distribution<double> noise_y(-10.0, 10.0);
  std::uniform_real_distribution<double> noise_z(0.0, 3.0);

  SyntheticStream stream;
  stream.frames.reserve(static_cast<size_t>(options.frame_count));

  // presence[p][s]: cluster point s at position p is visible this frame
  std::vector<std::vector<char>> presence(position_count);
  std::vector<std::vector<char>> previous_presence(position_count);
  for (size_t p = 0; p < position_count; ++p) presence[p].assign(clusters[p].size(), 0);
  std::vector<long> recurring_total(position_count, 0);

  for (int i = 0; i < options.frame_count; ++i) {
    Frame frame{i, i * options.frame_dt_s, {}};
    previous_presence = presence;
    for (size_t p = 0; p < position_count; ++p) {
      for (size_t s = 0; s < clusters[p].size(); ++s) {
        presence[p][s] = unit(rng) >= options.dropout ? 1 : 0;
        if (presence[p][s]) frame.points.push_back(clusters[p][s]);
        if (i > 0 && presence[p][s] && previous_presence[p][s]) ++recurring_total[p];
      }
    }
    if (options.noise_rate > 0.0) {
      const int n = noise_count(rng);
      for (int k = 0; k < n; ++k) {
        Point3 point;
        do {
          point = {noise_x(rng), noise_y(rng), noise_z(rng)};
        } while (std::any_of(boxes.begin(), boxes.end(),
                             [&](const TargetBox& box) { return box.contains(point); }));
        frame.points.push_back(point);
      }
    }
    stream.frames.push_back(std::move(frame));
  }

  const double pairs = static_cast<double>(options.frame_count - 1);
  const double keep = 1.0 - options.dropout;
  for (size_t p = 0; p < position_count; ++p) {
    stream.truth.push_back({options.positions_m[p], sizes[p],
                            sizes[p] * keep * keep,
                            static_cast<double>(recurring_total[p]) / pairs});
  }
  return stream;
}

}  // namespace wf
