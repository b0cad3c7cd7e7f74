// Command-line front end: range prediction, rain/fog sweeps, radar FOV
// maps, frame-stream ingestion, coefficient calibration, and synthetic
// measurement generation.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wf/attenuation.hpp"
#include "wf/calibration.hpp"
#include "wf/config.hpp"
#include "wf/csv.hpp"
#include "wf/detection.hpp"
#include "wf/link_budget.hpp"
#include "wf/synthetic.hpp"
#include "wf/types.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;
constexpr int kExitConvergence = 4;

struct ConvergenceFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

wf::Config load_or_default(const std::string& config_path) {
  if (config_path.empty()) return wf::default_config();
  return wf::load_config(config_path);
}

double parse_fog(const std::string& text) {
  return wf::parse_number(text, "fog visual range");
}

wf::WeatherCondition make_condition(double rain, const std::string& fog_text) {
  wf::WeatherCondition condition{rain, parse_fog(fog_text)};
  condition.validate();
  return condition;
}

std::string format_range(const std::optional<double>& range, int decimals = 2) {
  if (!range) return "none";
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", decimals, *range);
  return buffer;
}

std::ostream& open_sink(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw wf::io_error("cannot open \"" + path + "\" for writing");
  return file;
}

enum class SweepMode { Baseline, Wf, Both };

SweepMode parse_mode(const std::string& text) {
  if (text == "baseline") return SweepMode::Baseline;
  if (text == "wf") return SweepMode::Wf;
  if (text == "both") return SweepMode::Both;
  throw std::invalid_argument("mode must be baseline, wf or both");
}

// Ranges along a sweep must degrade consistently; a violation indicates a
// model bug, not a usage error.
void check_monotone(const std::vector<std::optional<double>>& ranges, bool non_increasing,
                    double slack) {
  for (size_t i = 1; i < ranges.size(); ++i) {
    const double previous = ranges[i - 1] ? *ranges[i - 1] : -1.0;
    const double current = ranges[i] ? *ranges[i] : -1.0;
    const bool ok = non_increasing ? current <= previous + slack : current >= previous - slack;
    if (!ok) throw std::logic_error("sweep produced a non-monotone range column");
  }
}

// ---- predict ----

struct PredictArgs {
  std::string config_path;
  std::string sensor = "radar";
  double rain = 0.0;
  std::string fog = "inf";
};

int run_predict(const PredictArgs& args) {
  const wf::Config config = load_or_default(args.config_path);
  const wf::SensorKind kind = wf::sensor_kind_from_string(args.sensor);
  const wf::WeatherCondition condition = make_condition(args.rain, args.fog);
  const wf::SensorSpec sensor = config.sensor(kind);

  const auto baseline = wf::predict_range(sensor, config.target, condition,
                                          config.attenuation, {}, config.solver);
  const auto wf_range = wf::predict_range(sensor, config.target, condition,
                                          config.attenuation, config.tuning(kind),
                                          config.solver);
  std::cout << "baseline " << format_range(baseline) << "\n";
  std::cout << "wf " << format_range(wf_range) << "\n";
  return 0;
}

// ---- sweep ----

struct SweepArgs {
  std::string config_path;
  std::string sensor = "radar";
  std::string variable = "rain";
  double start = 0.0;
  double stop = 100.0;
  double step = 1.0;
  std::string mode = "both";
  double fixed_rain = 0.0;
  std::string fixed_fog = "inf";
  std::string output_path;
};

int run_sweep(const SweepArgs& args) {
  const wf::Config config = load_or_default(args.config_path);
  const wf::SensorKind kind = wf::sensor_kind_from_string(args.sensor);
  const SweepMode mode = parse_mode(args.mode);
  const bool rain_sweep = args.variable == "rain";
  if (!rain_sweep && args.variable != "fog")
    throw std::invalid_argument("variable must be rain or fog");
  if (!(args.step > 0.0)) throw std::invalid_argument("sweep step must be > 0");
  if (!(args.start < args.stop)) throw std::invalid_argument("sweep start must be < stop");
  if (rain_sweep && args.start < 0.0)
    throw std::invalid_argument("rain sweep must start at >= 0 mm/h");
  if (!rain_sweep && !(args.start > 0.0))
    throw std::invalid_argument("fog sweep must start at > 0 m");

  const wf::SensorSpec sensor = config.sensor(kind);
  const wf::TuningCoefficients baseline_tuning{};
  const wf::TuningCoefficients& wf_tuning = config.tuning(kind);

  std::vector<double> grid;
  for (double x = args.start; x <= args.stop + 1e-9; x += args.step) grid.push_back(x);

  std::vector<double> gammas;
  std::vector<std::optional<double>> baseline_ranges;
  std::vector<std::optional<double>> wf_ranges;
  for (double x : grid) {
    wf::WeatherCondition condition = make_condition(args.fixed_rain, args.fixed_fog);
    (rain_sweep ? condition.rain_rate_mmh : condition.fog_visual_range_m) = x;
    condition.validate();
    const double gamma = std::visit(
        [&](const auto& spec) {
          return wf::weather_attenuation(spec, condition, config.attenuation,
                                         baseline_tuning);
        },
        sensor);
    gammas.push_back(gamma);
    if (mode != SweepMode::Wf)
      baseline_ranges.push_back(wf::predict_range(sensor, config.target, condition,
                                                  config.attenuation, baseline_tuning,
                                                  config.solver));
    if (mode != SweepMode::Baseline)
      wf_ranges.push_back(wf::predict_range(sensor, config.target, condition,
                                            config.attenuation, wf_tuning, config.solver));
  }

  const double slack = config.solver.refinement_m() + 1e-9;
  if (!baseline_ranges.empty()) check_monotone(baseline_ranges, rain_sweep, slack);
  if (!wf_ranges.empty()) check_monotone(wf_ranges, rain_sweep, slack);

  std::ofstream file;
  std::ostream& out = open_sink(file, args.output_path);
  out << "x,gamma";
  if (!baseline_ranges.empty()) out << ",range_baseline";
  if (!wf_ranges.empty()) out << ",range_wf";
  out << "\n";
  for (size_t i = 0; i < grid.size(); ++i) {
    out << wf::format_number(grid[i]) << ',' << wf::format_number(gammas[i], 6);
    if (!baseline_ranges.empty()) out << ',' << format_range(baseline_ranges[i], 4);
    if (!wf_ranges.empty()) out << ',' << format_range(wf_ranges[i], 4);
    out << "\n";
  }
  if (!out) throw wf::io_error("failed writing sweep output");
  return 0;
}

// ---- fov ----

struct FovArgs {
  std::string config_path;
  double rain = 0.0;
  std::string fog = "inf";
  double psi_start_deg = -65.0;
  double psi_stop_deg = 65.0;
  double psi_step_deg = 1.0;
  std::string mode = "both";
  std::string gain_profile_path;
  std::string output_path;
};

int run_fov(const FovArgs& args) {
  wf::Config config = load_or_default(args.config_path);
  const SweepMode mode = parse_mode(args.mode);
  const wf::WeatherCondition condition = make_condition(args.rain, args.fog);
  if (!(args.psi_step_deg > 0.0)) throw std::invalid_argument("psi step must be > 0");
  if (!(args.psi_start_deg < args.psi_stop_deg))
    throw std::invalid_argument("psi start must be < stop");
  if (!args.gain_profile_path.empty())
    config.radar.gain_profile = wf::read_gain_profile_csv(args.gain_profile_path);

  std::vector<double> psi_grid;
  for (double deg = args.psi_start_deg; deg <= args.psi_stop_deg + 1e-9;
       deg += args.psi_step_deg)
    psi_grid.push_back(wf::deg_to_rad(deg));

  std::vector<wf::FovEntry> baseline_map;
  std::vector<wf::FovEntry> wf_map;
  if (mode != SweepMode::Wf)
    baseline_map = wf::fov_map(config.radar, config.target, condition, config.attenuation,
                               {}, psi_grid, config.solver);
  if (mode != SweepMode::Baseline)
    wf_map = wf::fov_map(config.radar, config.target, condition, config.attenuation,
                         config.radar_tuning, psi_grid, config.solver);

  std::ofstream file;
  std::ostream& out = open_sink(file, args.output_path);
  out << "psi_deg";
  if (!baseline_map.empty()) out << ",range_baseline";
  if (!wf_map.empty()) out << ",range_wf";
  out << "\n";
  for (size_t i = 0; i < psi_grid.size(); ++i) {
    out << wf::format_number(wf::rad_to_deg(psi_grid[i]), 6);
    if (!baseline_map.empty()) out << ',' << format_range(baseline_map[i].range_m, 4);
    if (!wf_map.empty()) out << ',' << format_range(wf_map[i].range_m, 4);
    out << "\n";
  }
  if (!out) throw wf::io_error("failed writing fov output");
  return 0;
}

// ---- ingest ----

struct IngestArgs {
  std::string config_path;
  std::string frames_path;
  std::string freespace_path;
  std::string sensor = "lidar";
  double rain = 0.0;
  std::string fog = "inf";
  double epsilon = 0.1;
  std::vector<double> positions = {3, 9, 15, 21, 27, 33, 39, 44};
  double lateral_margin = 0.2;
  double vertical_margin = 0.2;
  std::string output_path;
  bool append = false;
};

int run_ingest(const IngestArgs& args) {
  const wf::Config config = load_or_default(args.config_path);
  const wf::SensorKind kind = wf::sensor_kind_from_string(args.sensor);
  const wf::WeatherCondition condition = make_condition(args.rain, args.fog);
  if (args.output_path.empty()) throw std::invalid_argument("ingest requires --output");

  const std::vector<wf::Frame> frames = wf::read_frames_csv(args.frames_path);
  std::vector<wf::Frame> freespace;
  const bool has_freespace = !args.freespace_path.empty();
  if (has_freespace) freespace = wf::read_frames_csv(args.freespace_path);

  wf::IngestOptions options;
  options.epsilon_m = args.epsilon;
  options.positions_m = args.positions;
  options.lateral_margin_m = args.lateral_margin;
  options.vertical_margin_m = args.vertical_margin;

  const wf::MeasurementSummary summary = wf::ingest_frames(
      frames, has_freespace ? &freespace : nullptr, kind, condition, config.target, options);
  wf::write_summary_csv(args.output_path, {summary}, args.append);
  return 0;
}

// ---- calibrate ----

struct CalibrateArgs {
  std::string config_path;
  std::string summary_path;
  std::string sensor = "radar";
  std::vector<std::string> free_variables;
  std::string output_path;
  std::string report_path;
  std::string target_mode = "lower";
  std::vector<std::string> exclusion_presets;
  unsigned long long seed = 0;
  int starts = 5;
  int max_evaluations = 10000;
  bool two_stage = false;
};

std::string condition_label(const wf::WeatherCondition& condition) {
  return "rain=" + wf::format_number(condition.rain_rate_mmh, 6) +
         " fog=" + wf::format_number(condition.fog_visual_range_m, 6);
}

void write_report(std::ostream& out, const wf::CalibrationProblem& problem,
                  const wf::CalibrationResult& result, wf::SensorKind kind) {
  out << "sensor: " << wf::to_string(kind) << "\n";
  out << "free variables:";
  for (const auto v : problem.free_variables) out << ' ' << wf::to_string(v);
  out << "\n";
  out << "converged: " << (result.converged ? "yes" : "no")
      << " (iterations " << result.iterations << ")\n";
  out << "objective: " << wf::format_number(result.objective_m2, 6) << " m^2\n";
  out << "fitted: eta_rain=" << wf::format_number(result.fitted.eta_rain, 6)
      << " eta_fog=" << wf::format_number(result.fitted.eta_fog, 6);
  if (kind == wf::SensorKind::Radar)
    out << " xi=" << wf::format_number(result.fitted.xi, 6);
  out << "\n\n";
  out << "condition                 measured_m  predicted_m  residual_m\n";
  for (size_t i = 0; i < problem.observations.size(); ++i) {
    const wf::Observation& obs = problem.observations[i];
    const double residual = i < result.residuals_m.size() ? result.residuals_m[i] : 0.0;
    char line[160];
    std::snprintf(line, sizeof(line), "%-25s %10.3f  %11.3f  %10.3f\n",
                  condition_label(obs.condition).c_str(), obs.measured_distance_m,
                  obs.measured_distance_m + residual, residual);
    out << line;
  }
}

int run_calibrate(const CalibrateArgs& args) {
  wf::Config config = load_or_default(args.config_path);
  const wf::SensorKind kind = wf::sensor_kind_from_string(args.sensor);
  if (args.free_variables.empty())
    throw std::invalid_argument("calibrate requires --free with at least one variable");
  if (args.output_path.empty()) throw std::invalid_argument("calibrate requires --output");
  const wf::TargetMode target_mode = [&] {
    if (args.target_mode == "lower") return wf::TargetMode::LowerBound;
    if (args.target_mode == "midpoint") return wf::TargetMode::Midpoint;
    throw std::invalid_argument("target mode must be lower or midpoint");
  }();

  std::vector<wf::MeasurementSummary> all = wf::read_summary_csv(args.summary_path);
  for (const std::string& preset : args.exclusion_presets)
    wf::apply_exclusion_preset(all, preset);
  std::vector<wf::MeasurementSummary> summaries;
  for (auto& summary : all)
    if (summary.sensor == kind) summaries.push_back(std::move(summary));
  if (summaries.empty())
    throw std::invalid_argument("summary file has no rows for sensor " + args.sensor);

  wf::CalibrationProblem problem;
  problem.sensor = config.sensor(kind);
  problem.target = config.target;
  problem.attenuation = config.attenuation;
  problem.initial = config.tuning(kind);  // non-free coefficients keep configured values
  problem.grid = config.solver;
  const int min_points = wf::min_recurring_points(problem.sensor);
  problem.observations = wf::observations_from_summaries(summaries, min_points, target_mode);

  wf::CalibrateOptions options;
  options.seed = args.seed;
  options.starts = args.starts;
  options.max_evaluations_per_start = args.max_evaluations;

  if (args.two_stage && kind != wf::SensorKind::Radar)
    throw std::invalid_argument("--two-stage applies to radar only");

  wf::CalibrationResult result;
  if (args.two_stage) {
    // Stage one pins xi on clear-weather observations, stage two fits the
    // requested attenuation coefficients with xi fixed.
    wf::CalibrationProblem stage_one = problem;
    stage_one.free_variables = {wf::FreeVariable::Xi};
    stage_one.observations.clear();
    for (const wf::Observation& obs : problem.observations)
      if (obs.condition.rain_rate_mmh == 0.0 && obs.condition.fog_is_clear())
        stage_one.observations.push_back(obs);
    if (stage_one.observations.empty())
      throw std::invalid_argument("two-stage calibration needs a clear-weather observation");
    const wf::CalibrationResult stage_one_result = wf::calibrate(stage_one, options);

    problem.initial.xi = stage_one_result.fitted.xi;
    for (const std::string& name : args.free_variables) {
      const wf::FreeVariable v = wf::free_variable_from_string(name);
      if (v != wf::FreeVariable::Xi) problem.free_variables.push_back(v);
    }
    if (problem.free_variables.empty())
      throw std::invalid_argument("two-stage calibration needs eta variables in --free");
    result = wf::calibrate(problem, options);
    result.converged = result.converged && stage_one_result.converged;
  } else {
    for (const std::string& name : args.free_variables)
      problem.free_variables.push_back(wf::free_variable_from_string(name));
    result = wf::calibrate(problem, options);
  }

  wf::TuningCoefficients& tuning =
      kind == wf::SensorKind::Radar ? config.radar_tuning : config.lidar_tuning;
  tuning = result.fitted;
  if (kind == wf::SensorKind::Lidar) tuning.xi = 1.0;
  wf::save_config(args.output_path, config);

  std::ofstream file;
  std::ostream& report = args.report_path.empty() ? std::cout : open_sink(file, args.report_path);
  write_report(report, problem, result, kind);

  if (!result.converged)
    throw ConvergenceFailure("calibration did not converge within the evaluation budget");
  return 0;
}

// ---- generate ----

struct GenerateArgs {
  std::string config_path;
  std::string output_path;
  std::string sidecar_path;
  std::string sensor = "lidar";
  double rain = 0.0;
  std::string fog = "inf";
  unsigned long long seed = 0;
  int frames = 50;
  int cluster_size = 25;
  std::vector<int> cluster_sizes;
  double dropout = 0.0;
  double noise_rate = 0.0;
  std::vector<double> positions = {3, 9, 15, 21, 27, 33, 39, 44};
};

int run_generate(const GenerateArgs& args) {
  const wf::Config config = load_or_default(args.config_path);
  const wf::SensorKind kind = wf::sensor_kind_from_string(args.sensor);
  const wf::WeatherCondition condition = make_condition(args.rain, args.fog);
  if (args.output_path.empty()) throw std::invalid_argument("generate requires --output");

  wf::SyntheticOptions options;
  options.seed = args.seed;
  options.frame_count = args.frames;
  options.cluster_size = args.cluster_size;
  options.cluster_sizes = args.cluster_sizes;
  options.dropout = args.dropout;
  options.noise_rate = args.noise_rate;
  options.positions_m = args.positions;

  const wf::SyntheticStream stream =
      wf::generate_synthetic(config.target, condition, options);
  wf::write_frames_csv(args.output_path, stream.frames);
  if (!args.sidecar_path.empty())
    wf::write_sidecar_csv(args.sidecar_path, kind, condition, stream.truth);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximum pedestrian detection range of radar and lidar under rain and fog"};
  app.require_subcommand(1);

  PredictArgs predict_args;
  CLI::App* predict = app.add_subcommand("predict", "Predict the maximum detection range");
  predict->add_option("--config", predict_args.config_path, "Config JSON (default: built-in preset)");
  predict->add_option("--sensor", predict_args.sensor, "radar or lidar");
  predict->add_option("--rain", predict_args.rain, "Rain rate [mm/h]");
  predict->add_option("--fog", predict_args.fog, "Fog visual range [m], inf = clear");

  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand("sweep", "Emit range-vs-weather CSV");
  sweep->add_option("--config", sweep_args.config_path, "Config JSON");
  sweep->add_option("--sensor", sweep_args.sensor, "radar or lidar");
  sweep->add_option("--variable", sweep_args.variable, "rain or fog");
  sweep->add_option("--start", sweep_args.start, "Sweep start");
  sweep->add_option("--stop", sweep_args.stop, "Sweep stop");
  sweep->add_option("--step", sweep_args.step, "Sweep step");
  sweep->add_option("--mode", sweep_args.mode, "baseline, wf or both");
  sweep->add_option("--rain", sweep_args.fixed_rain, "Fixed rain rate during fog sweeps");
  sweep->add_option("--fog", sweep_args.fixed_fog, "Fixed fog visual range during rain sweeps");
  sweep->add_option("--output,-o", sweep_args.output_path, "Output CSV (default: stdout)");

  FovArgs fov_args;
  CLI::App* fov = app.add_subcommand("fov", "Emit radar range-vs-azimuth CSV");
  fov->add_option("--config", fov_args.config_path, "Config JSON");
  fov->add_option("--rain", fov_args.rain, "Rain rate [mm/h]");
  fov->add_option("--fog", fov_args.fog, "Fog visual range [m], inf = clear");
  fov->add_option("--psi-start", fov_args.psi_start_deg, "First azimuth [deg]");
  fov->add_option("--psi-stop", fov_args.psi_stop_deg, "Last azimuth [deg]");
  fov->add_option("--psi-step", fov_args.psi_step_deg, "Azimuth step [deg]");
  fov->add_option("--mode", fov_args.mode, "baseline, wf or both");
  fov->add_option("--gain-profile", fov_args.gain_profile_path, "Gain profile CSV");
  fov->add_option("--output,-o", fov_args.output_path, "Output CSV (default: stdout)");

  IngestArgs ingest_args;
  CLI::App* ingest = app.add_subcommand("ingest", "Frame CSV to measurement summary");
  ingest->add_option("--config", ingest_args.config_path, "Config JSON");
  ingest->add_option("--frames", ingest_args.frames_path, "Frame CSV")->required();
  ingest->add_option("--freespace", ingest_args.freespace_path,
                     "Free-space frame CSV for lidar backscatter compensation");
  ingest->add_option("--sensor", ingest_args.sensor, "radar or lidar");
  ingest->add_option("--rain", ingest_args.rain, "Rain rate [mm/h]");
  ingest->add_option("--fog", ingest_args.fog, "Fog visual range [m], inf = clear");
  ingest->add_option("--epsilon", ingest_args.epsilon, "Recurring-point tolerance [m]");
  ingest->add_option("--positions", ingest_args.positions, "Target positions [m]")
      ->delimiter(',');
  ingest->add_option("--lateral-margin", ingest_args.lateral_margin, "Box margin [m]");
  ingest->add_option("--vertical-margin", ingest_args.vertical_margin, "Box margin [m]");
  ingest->add_option("--output,-o", ingest_args.output_path, "Summary CSV")->required();
  ingest->add_flag("--append", ingest_args.append, "Append to an existing summary CSV");

  CalibrateArgs calibrate_args;
  CLI::App* calibrate = app.add_subcommand("calibrate", "Fit tuning coefficients");
  calibrate->add_option("--config", calibrate_args.config_path, "Config JSON");
  calibrate->add_option("--summary", calibrate_args.summary_path, "Summary CSV")->required();
  calibrate->add_option("--sensor", calibrate_args.sensor, "radar or lidar");
  calibrate->add_option("--free", calibrate_args.free_variables,
                        "Free variables: eta_rain, eta_fog, xi")
      ->delimiter(',');
  calibrate->add_option("--output,-o", calibrate_args.output_path, "Fitted config JSON")
      ->required();
  calibrate->add_option("--report", calibrate_args.report_path,
                        "Fit report path (default: stdout)");
  calibrate->add_option("--target-mode", calibrate_args.target_mode, "lower or midpoint");
  calibrate->add_option("--exclude-preset", calibrate_args.exclusion_presets,
                        "Named measurement exclusion, e.g. paper-rain-15m");
  calibrate->add_option("--seed", calibrate_args.seed, "Multi-start seed");
  calibrate->add_option("--starts", calibrate_args.starts, "Number of starts");
  calibrate->add_option("--max-evals", calibrate_args.max_evaluations,
                        "Objective evaluation budget per start");
  calibrate->add_flag("--two-stage", calibrate_args.two_stage,
                      "Radar: fit xi on clear weather first, then the eta variables");

  GenerateArgs generate_args;
  CLI::App* generate = app.add_subcommand("generate", "Generate a synthetic frame stream");
  generate->add_option("--config", generate_args.config_path, "Config JSON");
  generate->add_option("--output,-o", generate_args.output_path, "Frame CSV")->required();
  generate->add_option("--sidecar", generate_args.sidecar_path, "Ground-truth CSV");
  generate->add_option("--sensor", generate_args.sensor, "radar or lidar");
  generate->add_option("--rain", generate_args.rain, "Rain rate [mm/h]");
  generate->add_option("--fog", generate_args.fog, "Fog visual range [m], inf = clear");
  generate->add_option("--seed", generate_args.seed, "RNG seed");
  generate->add_option("--frames", generate_args.frames, "Number of frames");
  generate->add_option("--cluster-size", generate_args.cluster_size,
                       "Points planted per position (1..40)");
  generate->add_option("--cluster-sizes", generate_args.cluster_sizes,
                       "Per-position cluster sizes")
      ->delimiter(',');
  generate->add_option("--dropout", generate_args.dropout, "Per-point per-frame dropout");
  generate->add_option("--noise-rate", generate_args.noise_rate,
                       "Expected background points per frame");
  generate->add_option("--positions", generate_args.positions, "Target positions [m]")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (predict->parsed()) return run_predict(predict_args);
    if (sweep->parsed()) return run_sweep(sweep_args);
    if (fov->parsed()) return run_fov(fov_args);
    if (ingest->parsed()) return run_ingest(ingest_args);
    if (calibrate->parsed()) return run_calibrate(calibrate_args);
    if (generate->parsed()) return run_generate(generate_args);
  } catch (const ConvergenceFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const wf::io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const wf::config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
