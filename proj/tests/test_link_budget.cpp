#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "test_util.hpp"
#include "wf/attenuation.hpp"
#include "wf/link_budget.hpp"

using namespace wf;
using wf::test::near_abs;
using wf::test::near_rel;

namespace {

// Test-side closed form for the zero-attenuation range: power = C / range^4
// crosses the threshold at (C / threshold)^(1/4).
double fourth_root_range(double numerator_c, double threshold_w) {
  return std::pow(numerator_c / threshold_w, 0.25);
}

// Test-side fixed-point iteration for range^4 * 10^(gamma*range/1000) = C/P_n.
double attenuated_range_oracle(double numerator_c, double threshold_w, double gamma) {
  double range = fourth_root_range(numerator_c, threshold_w);
  for (int i = 0; i < 200; ++i) {
    const double next = fourth_root_range(numerator_c, threshold_w) *
                        std::pow(10.0, -gamma * range / 4000.0);
    if (std::abs(next - range) < 1e-12) return next;
    range = next;
  }
  return range;
}

}  // namespace

TEST_CASE("radar received power matches the hand-evaluated reference") {
  const RadarSpec radar;
  const TargetSpec target;
  const double power = radar_received_power_w(radar, target, 0.0, 10.0);
  CHECK(near_rel(power, 3.6613e-9, 1e-3));

  // Independent re-evaluation of the closed form.
  const double gain_lin = std::pow(10.0, 1.6);
  const double wavelength = 299792458.0 / 77e9;
  const double expected = 1e-2 * 1.875 * gain_lin * gain_lin * 10.08 * wavelength *
                          wavelength / (4.0 * std::pow(kPi, 3.0) * 1e4);
  CHECK(near_rel(power, expected, 1e-12));
}

TEST_CASE("radar received power follows the inverse fourth-power law") {
  const RadarSpec radar;
  const TargetSpec target;
  const double p1 = radar_received_power_w(radar, target, 0.0, 17.0);
  const double p2 = radar_received_power_w(radar, target, 0.0, 34.0);
  CHECK(near_rel(p2, p1 / 16.0, 1e-12));
}

TEST_CASE("attenuation factor of gamma = 1000/range is exactly one tenth") {
  const RadarSpec radar;
  const TargetSpec target;
  const double p0 = radar_received_power_w(radar, target, 0.0, 10.0);
  const double p1 = radar_received_power_w(radar, target, 100.0, 10.0);
  CHECK(near_rel(p1, p0 / 10.0, 1e-12));
}

TEST_CASE("lidar received power matches the hand-evaluated reference") {
  const LidarSpec lidar;
  const TargetSpec target;
  const double power = lidar_received_power_w(lidar, target, 0.0, 100.0);
  CHECK(near_rel(power, 1.2340e-7, 1e-3));

  TargetSpec black = target;
  black.reflectance = 0.0;
  CHECK(lidar_received_power_w(lidar, black, 0.0, 100.0) == 0.0);

  const double doubled = lidar_received_power_w(lidar, target, 0.0, 200.0);
  CHECK(near_rel(doubled, power / 16.0, 1e-12));
}

TEST_CASE("received power rejects non-positive range") {
  const RadarSpec radar;
  const LidarSpec lidar;
  const TargetSpec target;
  CHECK_THROWS_AS(radar_received_power_w(radar, target, 0.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(radar_received_power_w(radar, target, 0.0, -5.0), std::domain_error);
  CHECK_THROWS_AS(lidar_received_power_w(lidar, target, 0.0, 0.0), std::domain_error);
}

TEST_CASE("azimuths outside the field of view receive zero power") {
  const TargetSpec target;
  RadarSpec radar;
  CHECK(radar_received_power_w(radar, target, 0.0, 10.0, deg_to_rad(70.0)) == 0.0);
  CHECK(radar_received_power_w(radar, target, 0.0, 10.0, deg_to_rad(-70.0)) == 0.0);

  radar.gain_profile = GainProfile({{deg_to_rad(-30.0), -1.0},
                                    {0.0, 0.0},
                                    {deg_to_rad(30.0), -1.0}});
  CHECK(radar_received_power_w(radar, target, 0.0, 10.0, deg_to_rad(40.0)) == 0.0);
  CHECK(radar_received_power_w(radar, target, 0.0, 10.0, deg_to_rad(20.0)) > 0.0);
}

TEST_CASE("gain profile validates its rows and interpolates linearly") {
  CHECK_THROWS_AS(GainProfile(std::vector<GainPoint>{}), std::invalid_argument);
  CHECK_THROWS_AS(GainProfile({{0.1, 0.0}, {0.2, -1.0}}), std::invalid_argument);  // no 0
  CHECK_THROWS_AS(GainProfile({{-0.1, 0.0}, {0.0, -0.5}, {0.1, 0.0}}),
                  std::invalid_argument);  // not 0 dB at 0
  CHECK_THROWS_AS(GainProfile({{0.2, 0.0}, {0.1, -1.0}}), std::invalid_argument);

  const GainProfile profile({{-0.4, -2.0}, {0.0, 0.0}, {0.4, -4.0}});
  CHECK(profile.relative_gain_db(0.2) == doctest::Approx(-2.0));
  CHECK(profile.relative_gain_db(-0.4) == -2.0);
  CHECK(profile.relative_gain_db(0.4) == -4.0);
  CHECK_THROWS_AS(profile.relative_gain_db(0.41), std::out_of_range);
}

TEST_CASE("solver finds the reference clear-weather ranges at zero attenuation") {
  const RadarSpec radar;
  const LidarSpec lidar;
  const TargetSpec target;
  const SolverGrid grid;

  const auto radar_power = [&](double range) {
    return radar_received_power_w(radar, target, 0.0, range);
  };
  const double radar_c = radar_power(1.0);
  const auto radar_range = solve_max_range(radar_power, radar.detection_threshold_w, grid);
  REQUIRE(radar_range.has_value());
  CHECK(near_abs(*radar_range, fourth_root_range(radar_c, radar.detection_threshold_w), 0.01));
  CHECK(near_abs(*radar_range, 52.0, 0.05));

  const auto lidar_power = [&](double range) {
    return lidar_received_power_w(lidar, target, 0.0, range);
  };
  const double lidar_c = lidar_power(1.0);
  const auto lidar_range = solve_max_range(lidar_power, lidar.detection_threshold_w, grid);
  REQUIRE(lidar_range.has_value());
  CHECK(near_abs(*lidar_range, fourth_root_range(lidar_c, lidar.detection_threshold_w), 0.01));
  CHECK(near_abs(*lidar_range, 187.4, 0.05));
}

TEST_CASE("solver returns nothing for a dead power function") {
  const auto dead = [](double) { return 0.0; };
  CHECK(!solve_max_range(dead, 1e-12).has_value());
}

TEST_CASE("solver reports model misuse for rising power") {
  const auto rising = [](double range) { return range; };
  CHECK_THROWS_AS(solve_max_range(rising, 1e3), std::logic_error);
}

TEST_CASE("solver saturates at the grid end when everything is detectable") {
  const auto strong = [](double range) { return 1.0 / std::pow(range, 4.0); };
  const SolverGrid grid{1.0, 10.0, 0.1};
  const auto range = solve_max_range(strong, 1e-12, grid);
  REQUIRE(range.has_value());
  CHECK(*range == 10.0);
}

TEST_CASE("solver agrees with the fourth-root oracle on random specs") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const TargetSpec target;
  const SolverGrid grid;
  for (int i = 0; i < 20; ++i) {
    double c = 0.0;
    std::function<double(double)> power;
    if (i % 2 == 0) {
      RadarSpec radar;
      radar.transmit_power_w = 1e-3 + unit(rng);
      radar.antenna_gain_dbi = 5.0 + 25.0 * unit(rng);
      radar.frequency_hz = (10.0 + 90.0 * unit(rng)) * 1e9;
      radar.offset_xi = 0.5 + 2.5 * unit(rng);
      power = [radar, target](double range) {
        return radar_received_power_w(radar, target, 0.0, range);
      };
    } else {
      LidarSpec lidar;
      lidar.transmit_power_w = 0.01 + unit(rng);
      lidar.aperture_m2 = 1e-3 + 0.1 * unit(rng);
      lidar.transmission = 0.5 + 0.5 * unit(rng);
      lidar.divergence_h_rad = (1.0 + 29.0 * unit(rng)) * 1e-3;
      lidar.divergence_v_rad = (1.0 + 29.0 * unit(rng)) * 1e-3;
      power = [lidar, target](double range) {
        return lidar_received_power_w(lidar, target, 0.0, range);
      };
    }
    c = power(1.0);
    const double expected = 1.0 + 249.0 * unit(rng);
    const double threshold = c / std::pow(expected, 4.0);
    const auto solved = solve_max_range(power, threshold, grid);
    REQUIRE(solved.has_value());
    CHECK(near_abs(*solved, expected, 1e-3));
  }
}

TEST_CASE("clear-weather radar prediction matches the attenuated-range oracle") {
  const RadarSpec radar;
  const TargetSpec target;
  const AttenuationParams params;
  const auto range = predict_range(radar, target, WeatherCondition{}, params);
  REQUIRE(range.has_value());
  CHECK(near_abs(*range, 51.1, 0.05));

  const double c = radar_received_power_w(radar, target, 0.0, 1.0);
  const double oracle = attenuated_range_oracle(c, radar.detection_threshold_w, 0.6);
  CHECK(near_abs(*range, oracle, 2e-3));
}

TEST_CASE("prediction is empty for a black lidar target") {
  LidarSpec lidar;
  TargetSpec target;
  target.reflectance = 0.0;
  const auto range = predict_range(lidar, target, WeatherCondition{}, AttenuationParams{});
  CHECK(!range.has_value());
}

TEST_CASE("heavier rain never extends the predicted range") {
  const TargetSpec target;
  const AttenuationParams params;
  const RadarSpec radar;
  const auto at16 = predict_range(radar, target, {16.0, kClearFog}, params);
  const auto at98 = predict_range(radar, target, {98.0, kClearFog}, params);
  REQUIRE(at16.has_value());
  REQUIRE(at98.has_value());
  CHECK(*at98 < *at16);
}

TEST_CASE("a fog coefficient below one extends the lidar fog range") {
  const LidarSpec lidar;
  const TargetSpec target;
  const AttenuationParams params;
  TuningCoefficients tuned;
  tuned.eta_fog = 0.199;
  for (double v : {6.0, 20.0, 50.0}) {
    const auto baseline = predict_range(lidar, target, {0.0, v}, params);
    const auto tuned_range = predict_range(lidar, target, {0.0, v}, params, tuned);
    REQUIRE(baseline.has_value());
    REQUIRE(tuned_range.has_value());
    CHECK(*tuned_range >= *baseline);
  }
  TuningCoefficients worse;
  worse.eta_fog = 2.0;
  const auto baseline = predict_range(lidar, target, {0.0, 20.0}, params);
  const auto degraded = predict_range(lidar, target, {0.0, 20.0}, params, worse);
  CHECK(*degraded <= *baseline);
}

TEST_CASE("scaling the radar offset scales the range by its fourth root") {
  RadarSpec radar;
  radar.atmospheric_db = 0.0;
  const TargetSpec target;
  const AttenuationParams params;
  const auto base = predict_range(radar, target, WeatherCondition{}, params);
  REQUIRE(base.has_value());
  for (double factor : {0.5, 2.0, 5.0}) {
    TuningCoefficients tuning;
    tuning.xi = factor;
    const auto scaled = predict_range(radar, target, WeatherCondition{}, params, tuning);
    REQUIRE(scaled.has_value());
    CHECK(near_rel(*scaled, *base * std::pow(factor, 0.25), 1e-3));
  }
}

TEST_CASE("a flat gain profile yields a constant field-of-view map") {
  RadarSpec radar;
  radar.gain_profile = GainProfile(
      {{-kRadarFovLimitRad, 0.0}, {0.0, 0.0}, {kRadarFovLimitRad, 0.0}});
  const TargetSpec target;
  const AttenuationParams params;
  std::vector<double> grid_psi;
  for (double deg = -60.0; deg <= 60.0; deg += 15.0) grid_psi.push_back(deg_to_rad(deg));

  const auto entries =
      fov_map(radar, target, {16.0, kClearFog}, params, {}, grid_psi);
  const auto reference = predict_range(radar, target, {16.0, kClearFog}, params);
  REQUIRE(reference.has_value());
  for (const FovEntry& entry : entries) {
    REQUIRE(entry.range_m.has_value());
    CHECK(near_abs(*entry.range_m, *reference, 1e-9));
  }
}

TEST_CASE("a -3 dB point shrinks the zero-attenuation range by 10^(-6/40)") {
  RadarSpec radar;
  radar.atmospheric_db = 0.0;
  radar.gain_profile = GainProfile({{deg_to_rad(-65.0), -4.875},
                                    {0.0, 0.0},
                                    {deg_to_rad(40.0), -3.0},
                                    {deg_to_rad(65.0), -4.875}});
  const TargetSpec target;
  const AttenuationParams params;
  const auto entries = fov_map(radar, target, WeatherCondition{}, params, {},
                               {0.0, deg_to_rad(40.0)});
  REQUIRE(entries[0].range_m.has_value());
  REQUIRE(entries[1].range_m.has_value());
  const double ratio = *entries[1].range_m / *entries[0].range_m;
  CHECK(near_abs(ratio, std::pow(10.0, -6.0 / 40.0), 1e-3));
}

TEST_CASE("azimuths beyond the field of view are not detectable") {
  const RadarSpec radar;
  const TargetSpec target;
  const AttenuationParams params;
  const auto entries = fov_map(radar, target, WeatherCondition{}, params, {},
                               {0.0, deg_to_rad(70.0)});
  CHECK(entries[0].range_m.has_value());
  CHECK(!entries[1].range_m.has_value());
}

TEST_CASE("the boresight entry of the field-of-view map equals the plain prediction") {
  const RadarSpec radar;
  const TargetSpec target;
  const AttenuationParams params;
  const TuningCoefficients tuning = paper2024_radar_tuning();
  for (const WeatherCondition& condition :
       {WeatherCondition{}, WeatherCondition{98.0, kClearFog}, WeatherCondition{0.0, 6.0}}) {
    const auto entries = fov_map(radar, target, condition, params, tuning, {0.0});
    const auto reference = predict_range(radar, target, condition, params, tuning);
    REQUIRE(entries.size() == 1);
    CHECK(entries[0].range_m == reference);
  }
}

TEST_CASE("the gain profile acts identically under every weather condition") {
  RadarSpec radar;
  radar.gain_profile = GainProfile({{deg_to_rad(-65.0), -4.875},
                                    {0.0, 0.0},
                                    {deg_to_rad(40.0), -3.0},
                                    {deg_to_rad(65.0), -4.875}});
  RadarSpec folded = radar;
  folded.gain_profile.reset();
  folded.antenna_gain_dbi = radar.antenna_gain_dbi + (-3.0);
  const TargetSpec target;
  const AttenuationParams params;
  for (const WeatherCondition& condition :
       {WeatherCondition{}, WeatherCondition{98.0, kClearFog}, WeatherCondition{0.0, 6.0}}) {
    const auto profiled =
        fov_map(radar, target, condition, params, {}, {deg_to_rad(40.0)});
    const auto equivalent = predict_range(folded, target, condition, params);
    REQUIRE(profiled[0].range_m.has_value());
    REQUIRE(equivalent.has_value());
    CHECK(near_abs(*profiled[0].range_m, *equivalent, 1e-9));
  }
}
