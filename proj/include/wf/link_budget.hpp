#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "wf/types.hpp"

namespace wf {

/// Azimuth limit of the radar field of view.
inline constexpr double kRadarFovLimitRad = deg_to_rad(65.0);

/// Received radar power in watts at the given range and azimuth:
///   10^(-gamma * range / 1000) * P_t * xi * G_lin(psi)^2 * rcs * lambda^2
///     / (4 * pi^3 * range^4)
/// with G_lin(psi) = 10^((G_dbi + profile(psi)) / 10). Without a gain
/// profile the relative gain is 0 dB across the field of view. Azimuths
/// outside the field of view (or outside the profile span) receive zero
/// power.
double radar_received_power_w(const RadarSpec& radar, const TargetSpec& target,
                              double attenuation, double range_m, double psi_rad = 0.0);

/// Received lidar power in watts at the given range:
///   10^(-gamma * range / 1000) * reflectance * A_l * width * T^2 * P_t
///     / (pi^2 * range^4 * (Q_v * Q_h / 4) * (Phi / 2)^2)
double lidar_received_power_w(const LidarSpec& lidar, const TargetSpec& target,
                              double attenuation, double range_m);

/// Largest range on the grid whose received power still meets the
/// detection threshold, refined by bisection to grid.step_m / 100.
/// Returns nullopt when even the closest grid point fails. power_w_at must
/// be monotone non-increasing on the grid; violations detected on a grid
/// subsample raise std::logic_error.
std::optional<double> solve_max_range(const std::function<double(double)>& power_w_at,
                                      double detection_threshold_w,
                                      const SolverGrid& grid = {});

/// Maximum detection range for a sensor under a weather condition. All
/// tuning coefficients equal to one give the untuned baseline prediction;
/// fitted coefficients give the weather-filter prediction. For radar the
/// effective power offset is spec.offset_xi * tuning.xi.
std::optional<double> predict_range(const RadarSpec& radar, const TargetSpec& target,
                                    const WeatherCondition& condition,
                                    const AttenuationParams& params,
                                    const TuningCoefficients& tuning = {},
                                    const SolverGrid& grid = {});
std::optional<double> predict_range(const LidarSpec& lidar, const TargetSpec& target,
                                    const WeatherCondition& condition,
                                    const AttenuationParams& params,
                                    const TuningCoefficients& tuning = {},
                                    const SolverGrid& grid = {});
std::optional<double> predict_range(const SensorSpec& sensor, const TargetSpec& target,
                                    const WeatherCondition& condition,
                                    const AttenuationParams& params,
                                    const TuningCoefficients& tuning = {},
                                    const SolverGrid& grid = {});

struct FovEntry {
  double psi_rad = 0.0;
  std::optional<double> range_m;  // nullopt = not detectable / out of FOV
};

/// Azimuth-dependent radar detection range. The gain profile is applied
/// identically for all weather conditions; entries outside the field of
/// view are reported as not detectable.
std::vector<FovEntry> fov_map(const RadarSpec& radar, const TargetSpec& target,
                              const WeatherCondition& condition,
                              const AttenuationParams& params,
                              const TuningCoefficients& tuning,
                              const std::vector<double>& psi_grid_rad,
                              const SolverGrid& grid = {});

}  // namespace wf
