#include "wf/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "wf/csv.hpp"

namespace wf {

namespace {

using json = nlohmann::ordered_json;

/// Tracks which keys of one JSON object were consumed so leftovers can be
/// reported with their full path.
class ObjectReader {
 public:
  ObjectReader(const json& object, std::string path) : object_(object), path_(std::move(path)) {
    if (!object_.is_object())
      throw config_error("config: \"" + path_ + "\" must be an object");
  }

  double number(const char* key) {
    const json& value = get(key);
    if (value.is_string() && value.get<std::string>() == "inf")
      return std::numeric_limits<double>::infinity();
    if (!value.is_number())
      throw config_error("config: \"" + path_ + "." + key + "\" must be a number");
    return value.get<double>();
  }

  int integer(const char* key) {
    const json& value = get(key);
    if (!value.is_number_integer())
      throw config_error("config: \"" + path_ + "." + key + "\" must be an integer");
    return value.get<int>();
  }

  const json* optional(const char* key) {
    auto found = object_.find(key);
    if (found == object_.end()) return nullptr;
    consumed_.insert(key);
    return &*found;
  }

  const json& child(const char* key) { return get(key); }

  void finish() const {
    for (const auto& [key, value] : object_.items()) {
      if (!consumed_.count(key))
        throw config_error("config: unknown key \"" + path_ + "." + key + "\"");
    }
  }

  const std::string& path() const { return path_; }

 private:
  const json& get(const char* key) {
    auto found = object_.find(key);
    if (found == object_.end())
      throw config_error("config: missing key \"" + path_ + "." + key + "\"");
    consumed_.insert(key);
    return *found;
  }

  const json& object_;
  std::string path_;
  std::set<std::string> consumed_;
};

GainProfile parse_gain_profile(const json& value, const std::string& path) {
  if (!value.is_array())
    throw config_error("config: \"" + path + "\" must be an array of rows");
  std::vector<GainPoint> points;
  for (size_t i = 0; i < value.size(); ++i) {
    ObjectReader row(value[i], path + "[" + std::to_string(i) + "]");
    points.push_back({deg_to_rad(row.number("psi_deg")), row.number("gain_db")});
    row.finish();
  }
  try {
    return GainProfile(std::move(points));
  } catch (const std::invalid_argument& e) {
    throw config_error("config: \"" + path + "\": " + e.what());
  }
}

RadarSpec parse_radar(const json& object, const std::string& path) {
  ObjectReader reader(object, path);
  RadarSpec radar;
  radar.transmit_power_w = reader.number("p_t_w");
  radar.antenna_gain_dbi = reader.number("gain_dbi");
  radar.detection_threshold_w = reader.number("p_n_w");
  radar.frequency_hz = reader.number("freq_hz");
  radar.atmospheric_db = reader.number("gamma_a_db");
  radar.offset_xi = reader.number("xi");
  radar.min_recurring_points = reader.integer("m_min");
  if (const json* profile = reader.optional("gain_profile"))
    radar.gain_profile = parse_gain_profile(*profile, path + ".gain_profile");
  reader.finish();
  return radar;
}

LidarSpec parse_lidar(const json& object, const std::string& path) {
  ObjectReader reader(object, path);
  LidarSpec lidar;
  lidar.transmit_power_w = reader.number("p_t_w");
  lidar.aperture_m2 = reader.number("aperture_m2");
  lidar.detection_threshold_w = reader.number("p_n_w");
  lidar.transmission = reader.number("transmission");
  lidar.divergence_h_rad = reader.number("div_h_rad");
  lidar.divergence_v_rad = reader.number("div_v_rad");
  lidar.wavelength_m = reader.number("wavelength_m");
  lidar.atmospheric_db = reader.number("gamma_a_db");
  lidar.mount_height_m = reader.number("mount_height_m");
  lidar.min_recurring_points = reader.integer("m_min");
  reader.finish();
  return lidar;
}

TargetSpec parse_target(const json& object, const std::string& path) {
  ObjectReader reader(object, path);
  TargetSpec target;
  target.rcs_m2 = reader.number("rcs_m2");
  target.reflectance = reader.number("reflectance");
  target.width_m = reader.number("width_m");
  target.length_m = reader.number("length_m");
  target.height_m = reader.number("height_m");
  target.surface_m2 = reader.number("surface_m2");
  target.rotation_rad = reader.number("rotation_rad");
  target.reflection_angle_rad = reader.number("reflection_angle_rad");
  target.temperature_c = reader.number("temperature_c");
  reader.finish();
  return target;
}

AttenuationParams parse_attenuation(const json& object, const std::string& path) {
  ObjectReader reader(object, path);
  AttenuationParams params;
  params.radar_rain_k = reader.number("radar_rain_k");
  params.radar_rain_alpha = reader.number("radar_rain_alpha");
  params.radar_fog_b = reader.number("radar_fog_b");
  params.lidar_rain_k = reader.number("lidar_rain_k");
  params.lidar_rain_alpha = reader.number("lidar_rain_alpha");
  params.absorption_q = reader.number("absorption_q");
  params.reference_wavelength_m = reader.number("reference_wavelength_m");
  params.fog_type_cf = reader.number("fog_type_cf");
  params.gamma_a_radar_db = reader.number("gamma_a_radar_db");
  params.gamma_a_lidar_db = reader.number("gamma_a_lidar_db");
  reader.finish();
  return params;
}

TuningCoefficients parse_tuning(const json& object, const std::string& path, bool with_xi) {
  ObjectReader reader(object, path);
  TuningCoefficients tuning;
  tuning.eta_rain = reader.number("eta_rain");
  tuning.eta_fog = reader.number("eta_fog");
  if (with_xi) tuning.xi = reader.number("xi");
  reader.finish();
  return tuning;
}

SolverGrid parse_solver(const json& object, const std::string& path) {
  ObjectReader reader(object, path);
  SolverGrid grid;
  grid.range_min_m = reader.number("range_min_m");
  grid.range_max_m = reader.number("range_max_m");
  grid.step_m = reader.number("step_m");
  reader.finish();
  return grid;
}

json gain_profile_to_json(const GainProfile& profile) {
  json rows = json::array();
  for (const GainPoint& p : profile.points())
    rows.push_back({{"psi_deg", rad_to_deg(p.psi_rad)}, {"gain_db", p.gain_db}});
  return rows;
}

}  // namespace

SensorSpec Config::sensor(SensorKind kind) const {
  if (kind == SensorKind::Radar) return radar;
  return lidar;
}

const TuningCoefficients& Config::tuning(SensorKind kind) const {
  return kind == SensorKind::Radar ? radar_tuning : lidar_tuning;
}

void Config::validate() const {
  radar.validate();
  lidar.validate();
  target.validate();
  attenuation.validate();
  radar_tuning.validate();
  lidar_tuning.validate();
  if (lidar_tuning.xi != 1.0)
    throw std::domain_error("lidar tuning has no xi coefficient (must stay 1)");
  solver.validate();
}

Config default_config() { return Config{}; }

Config parse_config_json(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw config_error(std::string("config: invalid JSON: ") + e.what());
  }
  ObjectReader reader(root, "");
  Config config;
  config.radar = parse_radar(reader.child("radar"), "radar");
  config.lidar = parse_lidar(reader.child("lidar"), "lidar");
  config.target = parse_target(reader.child("target"), "target");
  config.attenuation = parse_attenuation(reader.child("attenuation"), "attenuation");
  ObjectReader tuning(reader.child("tuning"), "tuning");
  config.radar_tuning = parse_tuning(tuning.child("radar"), "tuning.radar", true);
  config.lidar_tuning = parse_tuning(tuning.child("lidar"), "tuning.lidar", false);
  tuning.finish();
  config.solver = parse_solver(reader.child("solver"), "solver");
  reader.finish();
  try {
    config.validate();
  } catch (const std::domain_error& e) {
    throw config_error(std::string("config: ") + e.what());
  }
  return config;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open config \"" + path + "\" for reading");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_json(text.str());
}

std::string config_to_json(const Config& config) {
  json radar{{"p_t_w", config.radar.transmit_power_w},
             {"gain_dbi", config.radar.antenna_gain_dbi},
             {"p_n_w", config.radar.detection_threshold_w},
             {"freq_hz", config.radar.frequency_hz},
             {"gamma_a_db", config.radar.atmospheric_db},
             {"xi", config.radar.offset_xi},
             {"m_min", config.radar.min_recurring_points}};
  if (config.radar.gain_profile)
    radar["gain_profile"] = gain_profile_to_json(*config.radar.gain_profile);

  const json root{
      {"radar", radar},
      {"lidar",
       {{"p_t_w", config.lidar.transmit_power_w},
        {"aperture_m2", config.lidar.aperture_m2},
        {"p_n_w", config.lidar.detection_threshold_w},
        {"transmission", config.lidar.transmission},
        {"div_h_rad", config.lidar.divergence_h_rad},
        {"div_v_rad", config.lidar.divergence_v_rad},
        {"wavelength_m", config.lidar.wavelength_m},
        {"gamma_a_db", config.lidar.atmospheric_db},
        {"mount_height_m", config.lidar.mount_height_m},
        {"m_min", config.lidar.min_recurring_points}}},
      {"target",
       {{"rcs_m2", config.target.rcs_m2},
        {"reflectance", config.target.reflectance},
        {"width_m", config.target.width_m},
        {"length_m", config.target.length_m},
        {"height_m", config.target.height_m},
        {"surface_m2", config.target.surface_m2},
        {"rotation_rad", config.target.rotation_rad},
        {"reflection_angle_rad", config.target.reflection_angle_rad},
        {"temperature_c", config.target.temperature_c}}},
      {"attenuation",
       {{"radar_rain_k", config.attenuation.radar_rain_k},
        {"radar_rain_alpha", config.attenuation.radar_rain_alpha},
        {"radar_fog_b", config.attenuation.radar_fog_b},
        {"lidar_rain_k", config.attenuation.lidar_rain_k},
        {"lidar_rain_alpha", config.attenuation.lidar_rain_alpha},
        {"absorption_q", config.attenuation.absorption_q},
        {"reference_wavelength_m", config.attenuation.reference_wavelength_m},
        {"fog_type_cf", config.attenuation.fog_type_cf},
        {"gamma_a_radar_db", config.attenuation.gamma_a_radar_db},
        {"gamma_a_lidar_db", config.attenuation.gamma_a_lidar_db}}},
      {"tuning",
       {{"radar",
         {{"eta_rain", config.radar_tuning.eta_rain},
          {"eta_fog", config.radar_tuning.eta_fog},
          {"xi", config.radar_tuning.xi}}},
        {"lidar",
         {{"eta_rain", config.lidar_tuning.eta_rain},
          {"eta_fog", config.lidar_tuning.eta_fog}}}}},
      {"solver",
       {{"range_min_m", config.solver.range_min_m},
        {"range_max_m", config.solver.range_max_m},
        {"step_m", config.solver.step_m}}}};
  return root.dump(2) + "\n";
}

void save_config(const std::string& path, const Config& config) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open config \"" + path + "\" for writing");
  out << config_to_json(config);
  if (!out) throw io_error("failed writing config \"" + path + "\"");
}

}  // namespace wf
