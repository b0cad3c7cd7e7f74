#include "wf/link_budget.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wf/attenuation.hpp"

namespace wf {

namespace {

double path_loss_factor(double attenuation, double range_m) {
  return std::pow(10.0, -attenuation * range_m / 1000.0);
}

}  // namespace

double radar_received_power_w(const RadarSpec& radar, const TargetSpec& target,
                              double attenuation, double range_m, double psi_rad) {
  if (!(range_m > 0.0)) throw std::domain_error("radar_received_power_w: range must be > 0 m");
  if (std::abs(psi_rad) > kRadarFovLimitRad + 1e-12) return 0.0;
  double relative_gain_db = 0.0;
  if (radar.gain_profile) {
    if (!radar.gain_profile->covers(psi_rad)) return 0.0;
    relative_gain_db = radar.gain_profile->relative_gain_db(psi_rad);
  }
  const double gain_lin = std::pow(10.0, (radar.antenna_gain_dbi + relative_gain_db) / 10.0);
  const double wavelength = radar.wavelength_m();
  const double numerator = radar.transmit_power_w * radar.offset_xi * gain_lin * gain_lin *
                           target.rcs_m2 * wavelength * wavelength;
  const double denominator = 4.0 * kPi * kPi * kPi * std::pow(range_m, 4.0);
  return path_loss_factor(attenuation, range_m) * numerator / denominator;
}

double lidar_received_power_w(const LidarSpec& lidar, const TargetSpec& target,
                              double attenuation, double range_m) {
  if (!(range_m > 0.0)) throw std::domain_error("lidar_received_power_w: range must be > 0 m");
  const double numerator = target.reflectance * lidar.aperture_m2 * target.width_m *
                           lidar.transmission * lidar.transmission * lidar.transmit_power_w;
  const double beam_solid = lidar.divergence_v_rad * lidar.divergence_h_rad / 4.0;
  const double half_angle = target.reflection_angle_rad / 2.0;
  const double denominator = kPi * kPi * std::pow(range_m, 4.0) * beam_solid *
                             half_angle * half_angle;
  return path_loss_factor(attenuation, range_m) * numerator / denominator;
}

std::optional<double> solve_max_range(const std::function<double(double)>& power_w_at,
                                      double detection_threshold_w,
                                      const SolverGrid& grid) {
  grid.validate();
  if (!(detection_threshold_w > 0.0))
    throw std::domain_error("solve_max_range: detection threshold must be > 0 W");

  const long last = static_cast<long>(
      std::floor((grid.range_max_m - grid.range_min_m) / grid.step_m + 1e-9));
  const auto grid_point = [&](long k) { return grid.range_min_m + k * grid.step_m; };

  // Spot-check that the power curve is non-increasing along the grid;
  // a rise flags model misuse rather than a solvable configuration.
  const long samples = std::min<long>(last + 1, 33);
  double previous = power_w_at(grid_point(0));
  for (long s = 1; s < samples; ++s) {
    const long k = s * last / (samples - 1);
    const double current = power_w_at(grid_point(k));
    if (current > previous * (1.0 + 1e-9) + 1e-300)
      throw std::logic_error("solve_max_range: power function is not non-increasing on the grid");
    previous = current;
  }

  const auto detected = [&](double range) { return power_w_at(range) >= detection_threshold_w; };
  if (!detected(grid_point(0))) return std::nullopt;
  if (detected(grid_point(last))) return grid_point(last);

  long lo = 0;
  long hi = last;
  while (hi - lo > 1) {
    const long mid = lo + (hi - lo) / 2;
    (detected(grid_point(mid)) ? lo : hi) = mid;
  }

  double range_ok = grid_point(lo);
  double range_fail = grid_point(hi);
  while (range_fail - range_ok > grid.refinement_m()) {
    const double mid = 0.5 * (range_ok + range_fail);
    (detected(mid) ? range_ok : range_fail) = mid;
  }
  return range_ok;
}

std::optional<double> predict_range(const RadarSpec& radar, const TargetSpec& target,
                                    const WeatherCondition& condition,
                                    const AttenuationParams& params,
                                    const TuningCoefficients& tuning,
                                    const SolverGrid& grid) {
  radar.validate();
  target.validate();
  const double gamma = weather_attenuation(radar, condition, params, tuning);
  const auto power = [&](double range) {
    return tuning.xi * radar_received_power_w(radar, target, gamma, range, 0.0);
  };
  return solve_max_range(power, radar.detection_threshold_w, grid);
}

std::optional<double> predict_range(const LidarSpec& lidar, const TargetSpec& target,
                                    const WeatherCondition& condition,
                                    const AttenuationParams& params,
                                    const TuningCoefficients& tuning,
                                    const SolverGrid& grid) {
  lidar.validate();
  target.validate();
  const double gamma = weather_attenuation(lidar, condition, params, tuning);
  const auto power = [&](double range) {
    return lidar_received_power_w(lidar, target, gamma, range);
  };
  return solve_max_range(power, lidar.detection_threshold_w, grid);
}

std::optional<double> predict_range(const SensorSpec& sensor, const TargetSpec& target,
                                    const WeatherCondition& condition,
                                    const AttenuationParams& params,
                                    const TuningCoefficients& tuning,
                                    const SolverGrid& grid) {
  return std::visit(
      [&](const auto& spec) {
        return predict_range(spec, target, condition, params, tuning, grid);
      },
      sensor);
}

std::vector<FovEntry> fov_map(const RadarSpec& radar, const TargetSpec& target,
                              const WeatherCondition& condition,
                              const AttenuationParams& params,
                              const TuningCoefficients& tuning,
                              const std::vector<double>& psi_grid_rad,
                              const SolverGrid& grid) {
  radar.validate();
  target.validate();
  const double gamma = weather_attenuation(radar, condition, params, tuning);
  std::vector<FovEntry> entries;
  entries.reserve(psi_grid_rad.size());
  for (double psi : psi_grid_rad) {
    FovEntry entry{psi, std::nullopt};
    const bool in_fov = std::abs(psi) <= kRadarFovLimitRad + 1e-12 &&
                        (!radar.gain_profile || radar.gain_profile->covers(psi));
    if (in_fov) {
      const auto power = [&](double range) {
        return tuning.xi * radar_received_power_w(radar, target, gamma, range, psi);
      };
      entry.range_m = solve_max_range(power, radar.detection_threshold_w, grid);
    }
    entries.push_back(entry);
  }
  return entries;
}

}  // namespace wf
