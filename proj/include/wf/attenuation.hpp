#pragma once

#include "wf/types.hpp"

namespace wf {

/// Fog density M = (c_f / v)^(3/2) for visual range v. Strictly decreasing
/// in v.
double fog_density(double visual_range_m, double fog_type_cf);

/// Rain attenuation eta * k * r^alpha with (k, alpha) selected per sensor
/// kind. Zero rain gives exactly zero attenuation.
double rain_attenuation(SensorKind kind, double rain_rate_mmh,
                        const AttenuationParams& params, double eta_rain = 1.0);

/// Fog attenuation for a visual range v, or exactly zero for kClearFog.
/// Radar: eta * b * fog_density(v). Lidar: eta * (17 / v) *
/// (lambda / lambda_0)^(-q). lidar_wavelength_m is only used for lidar.
double fog_attenuation(SensorKind kind, double fog_visual_range_m,
                       const AttenuationParams& params,
                       double lidar_wavelength_m = 905e-9, double eta_fog = 1.0);

/// Total attenuation gamma = gamma_rain + gamma_fog + gamma_atmosphere.
/// All components must be >= 0.
double total_attenuation(double rain_component, double fog_component,
                         double atmosphere_component);

/// Composed attenuation for a sensor under a weather condition, using the
/// sensor's atmospheric constant and (for lidar) its wavelength.
double weather_attenuation(const RadarSpec& radar, const WeatherCondition& condition,
                           const AttenuationParams& params,
                           const TuningCoefficients& tuning = {});
double weather_attenuation(const LidarSpec& lidar, const WeatherCondition& condition,
                           const AttenuationParams& params,
                           const TuningCoefficients& tuning = {});

}  // namespace wf
