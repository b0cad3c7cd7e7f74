#include "wf/attenuation.hpp"

#include <cmath>
#include <stdexcept>

namespace wf {

double fog_density(double visual_range_m, double fog_type_cf) {
  if (!(visual_range_m > 0.0))
    throw std::domain_error("fog_density: visual range must be > 0 m");
  if (!(fog_type_cf > 0.0))
    throw std::domain_error("fog_density: fog type parameter must be > 0");
  return std::pow(fog_type_cf / visual_range_m, 1.5);
}

double rain_attenuation(SensorKind kind, double rain_rate_mmh,
                        const AttenuationParams& params, double eta_rain) {
  if (!(rain_rate_mmh >= 0.0))
    throw std::domain_error("rain_attenuation: rain rate must be >= 0 mm/h");
  if (rain_rate_mmh == 0.0) return 0.0;
  const double k = kind == SensorKind::Radar ? params.radar_rain_k : params.lidar_rain_k;
  const double alpha =
      kind == SensorKind::Radar ? params.radar_rain_alpha : params.lidar_rain_alpha;
  return eta_rain * (k * std::pow(rain_rate_mmh, alpha));
}

double fog_attenuation(SensorKind kind, double fog_visual_range_m,
                       const AttenuationParams& params, double lidar_wavelength_m,
                       double eta_fog) {
  if (std::isinf(fog_visual_range_m) && fog_visual_range_m > 0.0) return 0.0;
  if (!(fog_visual_range_m > 0.0))
    throw std::domain_error("fog_attenuation: visual range must be > 0 m");
  if (kind == SensorKind::Radar)
    return eta_fog *
           (params.radar_fog_b * fog_density(fog_visual_range_m, params.fog_type_cf));
  if (!(lidar_wavelength_m > 0.0))
    throw std::domain_error("fog_attenuation: lidar wavelength must be > 0 m");
  const double wavelength_ratio = lidar_wavelength_m / params.reference_wavelength_m;
  return eta_fog * ((17.0 / fog_visual_range_m) *
                    std::pow(wavelength_ratio, -params.absorption_q));
}

double total_attenuation(double rain_component, double fog_component,
                         double atmosphere_component) {
  if (!(rain_component >= 0.0) || !(fog_component >= 0.0) || !(atmosphere_component >= 0.0))
    throw std::domain_error("total_attenuation: components must be >= 0");
  return rain_component + fog_component + atmosphere_component;
}

namespace {

double composed(SensorKind kind, const WeatherCondition& condition,
                const AttenuationParams& params, const TuningCoefficients& tuning,
                double lidar_wavelength_m, double atmosphere_db) {
  condition.validate();
  const double rain =
      rain_attenuation(kind, condition.rain_rate_mmh, params, tuning.eta_rain);
  const double fog = fog_attenuation(kind, condition.fog_visual_range_m, params,
                                     lidar_wavelength_m, tuning.eta_fog);
  return total_attenuation(rain, fog, atmosphere_db);
}

}  // namespace

double weather_attenuation(const RadarSpec& radar, const WeatherCondition& condition,
                           const AttenuationParams& params,
                           const TuningCoefficients& tuning) {
  return composed(SensorKind::Radar, condition, params, tuning,
                  params.reference_wavelength_m, radar.atmospheric_db);
}

double weather_attenuation(const LidarSpec& lidar, const WeatherCondition& condition,
                           const AttenuationParams& params,
                           const TuningCoefficients& tuning) {
  return composed(SensorKind::Lidar, condition, params, tuning, lidar.wavelength_m,
                  lidar.atmospheric_db);
}

}  // namespace wf
