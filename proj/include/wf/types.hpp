#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace wf {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Fog visual range value meaning "no fog".
inline constexpr double kClearFog = std::numeric_limits<double>::infinity();

inline constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

enum class SensorKind { Radar, Lidar };

std::string to_string(SensorKind kind);
SensorKind sensor_kind_from_string(const std::string& name);

/// Rain rate and fog visual range. fog_visual_range_m == kClearFog (infinity)
/// means no fog and contributes exactly zero fog attenuation.
struct WeatherCondition {
  double rain_rate_mmh = 0.0;
  double fog_visual_range_m = kClearFog;

  bool fog_is_clear() const { return std::isinf(fog_visual_range_m); }
  void validate() const;
  bool operator==(const WeatherCondition&) const = default;
};

/// Model constants for the rain/fog/atmosphere attenuation formulas.
/// Attenuation values are in model-dB, consumed verbatim by the
/// 10^(-gamma*range/1000) link-budget factor.
struct AttenuationParams {
  double radar_rain_k = 1.1319;
  double radar_rain_alpha = 0.7174;
  double radar_fog_b = 3.1733;
  double lidar_rain_k = 1.076;
  double lidar_rain_alpha = 0.67;
  double absorption_q = 3.45e-2;
  double reference_wavelength_m = 550e-9;
  double fog_type_cf = 0.034;            // dry continental fog
  double gamma_a_radar_db = 0.6;
  double gamma_a_lidar_db = 0.03;

  void validate() const;
  bool operator==(const AttenuationParams&) const = default;
};

/// Empirical tuning coefficients, one instance per sensor. All fields equal
/// to one reproduce the untuned physical model; fitted values absorb
/// secondary weather effects. xi applies to radar only and scales the
/// received power as an overall offset on top of RadarSpec::offset_xi.
struct TuningCoefficients {
  double eta_rain = 1.0;
  double eta_fog = 1.0;
  double xi = 1.0;

  void validate() const;
  bool operator==(const TuningCoefficients&) const = default;
};

/// Reference calibration shipped with the library (preset "paper-2024").
TuningCoefficients paper2024_radar_tuning();
TuningCoefficients paper2024_lidar_tuning();

struct GainPoint {
  double psi_rad = 0.0;
  double gain_db = 0.0;
  bool operator==(const GainPoint&) const = default;
};

/// Piecewise-linear azimuth-dependent relative antenna gain. Points must be
/// strictly increasing in psi, the covered span must include psi = 0, and
/// the relative gain at psi = 0 must be 0 dB.
class GainProfile {
 public:
  GainProfile() = default;
  explicit GainProfile(std::vector<GainPoint> points);

  /// Linear interpolation between rows; throws std::out_of_range outside
  /// the covered span.
  double relative_gain_db(double psi_rad) const;

  bool covers(double psi_rad) const;
  double min_psi_rad() const;
  double max_psi_rad() const;
  const std::vector<GainPoint>& points() const { return points_; }

  bool operator==(const GainProfile&) const = default;

 private:
  std::vector<GainPoint> points_;
};

/// Radar hardware specification. Defaults describe the reference 77 GHz
/// automotive radar of the "paper-2024" preset.
struct RadarSpec {
  double transmit_power_w = 1e-2;
  double antenna_gain_dbi = 16.0;
  double detection_threshold_w = 5e-12;
  double frequency_hz = 77e9;
  double atmospheric_db = 0.6;           // gamma_a, model-dB
  double offset_xi = 1.875;              // received-power offset calibration
  int min_recurring_points = 1;          // m_R
  std::optional<GainProfile> gain_profile;

  double wavelength_m() const { return kSpeedOfLight / frequency_hz; }
  void validate() const;
  bool operator==(const RadarSpec&) const = default;
};

/// Lidar hardware specification. Defaults describe the reference 905 nm
/// lidar of the "paper-2024" preset.
struct LidarSpec {
  double transmit_power_w = 22e-2;
  double aperture_m2 = 4.4e-2;           // receiver aperture A_l
  double detection_threshold_w = 1e-8;
  double transmission = 0.9;             // optics transmission, (0, 1]
  double divergence_h_rad = 18.27e-3;
  double divergence_v_rad = 4.57e-3;
  double wavelength_m = 905e-9;
  double atmospheric_db = 0.03;          // gamma_a, model-dB
  double mount_height_m = 0.5;
  int min_recurring_points = 10;         // m_L

  void validate() const;
  bool operator==(const LidarSpec&) const = default;
};

/// Pedestrian target description. Surface, length, height, rotation and
/// temperature are kept for ingestion box geometry and forward
/// compatibility; they do not enter the received-power equations.
struct TargetSpec {
  double rcs_m2 = 10.08;                 // radar cross section
  double reflectance = 0.5;              // in [0, 1]
  double width_m = 0.4;
  double length_m = 0.3;
  double height_m = 1.8;
  double surface_m2 = 0.72;
  double rotation_rad = 0.5 * kPi;       // crossing right to left
  double reflection_angle_rad = 0.5 * kPi;
  double temperature_c = 10.0;

  void validate() const;
  bool operator==(const TargetSpec&) const = default;
};

using SensorSpec = std::variant<RadarSpec, LidarSpec>;

SensorKind kind_of(const SensorSpec& sensor);
double detection_threshold_w(const SensorSpec& sensor);
int min_recurring_points(const SensorSpec& sensor);

/// Search grid for the maximum-range solve. The boundary found on the grid
/// is refined by bisection to step_m / 100.
struct SolverGrid {
  double range_min_m = 0.1;
  double range_max_m = 300.0;
  double step_m = 0.01;

  double refinement_m() const { return step_m / 100.0; }
  void validate() const;
  bool operator==(const SolverGrid&) const = default;
};

}  // namespace wf
