#pragma once

#include <stdexcept>
#include <string>

#include "wf/types.hpp"

namespace wf {

/// Malformed configuration content (unknown key, wrong type, violated
/// invariant). The message names the offending path.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Full model configuration. Defaults equal the bundled "paper-2024"
/// reference preset: the 77 GHz radar / 905 nm lidar pair, the pedestrian
/// target, the published attenuation constants, and the fitted tuning
/// coefficients.
struct Config {
  RadarSpec radar;
  LidarSpec lidar;
  TargetSpec target;
  AttenuationParams attenuation;
  TuningCoefficients radar_tuning = paper2024_radar_tuning();
  TuningCoefficients lidar_tuning = paper2024_lidar_tuning();
  SolverGrid solver;

  SensorSpec sensor(SensorKind kind) const;
  const TuningCoefficients& tuning(SensorKind kind) const;
  void validate() const;
  bool operator==(const Config&) const = default;
};

inline constexpr const char* kDefaultPresetName = "paper-2024";

Config default_config();

/// Strict JSON round trip: unknown keys are rejected with the offending
/// path named; load(save(c)) == c.
Config load_config(const std::string& path);
Config parse_config_json(const std::string& json_text);
void save_config(const std::string& path, const Config& config);
std::string config_to_json(const Config& config);

}  // namespace wf
