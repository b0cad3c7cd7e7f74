#include "wf/types.hpp"

#include <algorithm>
#include <stdexcept>

namespace wf {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw std::domain_error(message);
}

}  // namespace

std::string to_string(SensorKind kind) {
  return kind == SensorKind::Radar ? "radar" : "lidar";
}

SensorKind sensor_kind_from_string(const std::string& name) {
  if (name == "radar") return SensorKind::Radar;
  if (name == "lidar") return SensorKind::Lidar;
  throw std::invalid_argument("unknown sensor kind \"" + name +
                              "\" (expected \"radar\" or \"lidar\")");
}

void WeatherCondition::validate() const {
  require(rain_rate_mmh >= 0.0 && std::isfinite(rain_rate_mmh),
          "rain rate must be finite and >= 0 mm/h");
  require(fog_visual_range_m > 0.0, "fog visual range must be > 0 m (inf = clear)");
}

void AttenuationParams::validate() const {
  for (double v : {radar_rain_k, radar_rain_alpha, radar_fog_b, lidar_rain_k,
                   lidar_rain_alpha, absorption_q, reference_wavelength_m,
                   fog_type_cf, gamma_a_radar_db, gamma_a_lidar_db}) {
    require(std::isfinite(v), "attenuation parameters must be finite");
  }
  require(radar_rain_k > 0.0, "radar_rain_k must be > 0");
  require(lidar_rain_k > 0.0, "lidar_rain_k must be > 0");
  require(radar_fog_b > 0.0, "radar_fog_b must be > 0");
  require(fog_type_cf > 0.0, "fog_type_cf must be > 0");
  require(reference_wavelength_m > 0.0, "reference_wavelength_m must be > 0");
  require(gamma_a_radar_db >= 0.0, "gamma_a_radar_db must be >= 0");
  require(gamma_a_lidar_db >= 0.0, "gamma_a_lidar_db must be >= 0");
}

void TuningCoefficients::validate() const {
  require(eta_rain > 0.0 && std::isfinite(eta_rain), "eta_rain must be finite and > 0");
  require(eta_fog > 0.0 && std::isfinite(eta_fog), "eta_fog must be finite and > 0");
  require(xi > 0.0 && std::isfinite(xi), "xi must be finite and > 0");
}

TuningCoefficients paper2024_radar_tuning() { return {1.163, 0.0199, 1.875}; }
TuningCoefficients paper2024_lidar_tuning() { return {1.163, 0.199, 1.0}; }

GainProfile::GainProfile(std::vector<GainPoint> points) : points_(std::move(points)) {
  if (points_.empty()) throw std::invalid_argument("gain profile needs at least one row");
  for (size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i].psi_rad) || !std::isfinite(points_[i].gain_db))
      throw std::invalid_argument("gain profile rows must be finite");
    if (i > 0 && !(points_[i].psi_rad > points_[i - 1].psi_rad))
      throw std::invalid_argument("gain profile rows must be strictly increasing in psi");
  }
  if (!covers(0.0)) throw std::invalid_argument("gain profile must cover psi = 0");
  if (std::abs(relative_gain_db(0.0)) > 1e-9)
    throw std::invalid_argument("gain profile must be 0 dB at psi = 0");
}

double GainProfile::relative_gain_db(double psi_rad) const {
  if (!covers(psi_rad))
    throw std::out_of_range("psi outside the span covered by the gain profile");
  auto upper = std::lower_bound(points_.begin(), points_.end(), psi_rad,
                                [](const GainPoint& p, double v) { return p.psi_rad < v; });
  if (upper == points_.begin()) return upper->gain_db;
  if (upper == points_.end()) return points_.back().gain_db;
  const GainPoint& hi = *upper;
  const GainPoint& lo = *(upper - 1);
  const double t = (psi_rad - lo.psi_rad) / (hi.psi_rad - lo.psi_rad);
  return lo.gain_db + t * (hi.gain_db - lo.gain_db);
}

bool GainProfile::covers(double psi_rad) const {
  return !points_.empty() && psi_rad >= points_.front().psi_rad &&
         psi_rad <= points_.back().psi_rad;
}

double GainProfile::min_psi_rad() const { return points_.front().psi_rad; }
double GainProfile::max_psi_rad() const { return points_.back().psi_rad; }

void RadarSpec::validate() const {
  require(transmit_power_w > 0.0, "radar transmit power must be > 0 W");
  require(detection_threshold_w > 0.0, "radar detection threshold must be > 0 W");
  require(frequency_hz > 0.0, "radar frequency must be > 0 Hz");
  require(offset_xi > 0.0, "radar offset_xi must be > 0");
  require(atmospheric_db >= 0.0, "radar atmospheric attenuation must be >= 0");
  if (min_recurring_points < 1)
    throw std::domain_error("radar min_recurring_points must be >= 1");
}

void LidarSpec::validate() const {
  require(transmit_power_w > 0.0, "lidar transmit power must be > 0 W");
  require(aperture_m2 > 0.0, "lidar aperture must be > 0 m^2");
  require(detection_threshold_w > 0.0, "lidar detection threshold must be > 0 W");
  require(transmission > 0.0 && transmission <= 1.0, "lidar transmission must be in (0, 1]");
  require(divergence_h_rad > 0.0, "lidar horizontal divergence must be > 0 rad");
  require(divergence_v_rad > 0.0, "lidar vertical divergence must be > 0 rad");
  require(wavelength_m > 0.0, "lidar wavelength must be > 0 m");
  require(atmospheric_db >= 0.0, "lidar atmospheric attenuation must be >= 0");
  if (min_recurring_points < 1)
    throw std::domain_error("lidar min_recurring_points must be >= 1");
}

void TargetSpec::validate() const {
  require(rcs_m2 > 0.0, "target radar cross section must be > 0 m^2");
  require(reflectance >= 0.0 && reflectance <= 1.0, "target reflectance must be in [0, 1]");
  require(width_m > 0.0 && length_m > 0.0 && height_m > 0.0,
          "target extents must be > 0 m");
  require(reflection_angle_rad > 0.0 && reflection_angle_rad < kPi,
          "target reflection angle must be in (0, pi)");
}

SensorKind kind_of(const SensorSpec& sensor) {
  return std::holds_alternative<RadarSpec>(sensor) ? SensorKind::Radar : SensorKind::Lidar;
}

double detection_threshold_w(const SensorSpec& sensor) {
  return std::visit([](const auto& s) { return s.detection_threshold_w; }, sensor);
}

int min_recurring_points(const SensorSpec& sensor) {
  return std::visit([](const auto& s) { return s.min_recurring_points; }, sensor);
}

void SolverGrid::validate() const {
  require(range_min_m > 0.0, "solver grid minimum range must be > 0 m");
  require(range_max_m > range_min_m, "solver grid maximum must exceed the minimum");
  require(step_m > 0.0, "solver grid step must be > 0 m");
}

}  // namespace wf
