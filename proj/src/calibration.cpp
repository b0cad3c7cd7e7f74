#include "wf/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <stdexcept>

#include "wf/link_budget.hpp"

namespace wf {

namespace {

bool nearly_equal(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

bool matches(const Observation& observation, const Observation& exclusion) {
  return nearly_equal(observation.condition.rain_rate_mmh, exclusion.condition.rain_rate_mmh) &&
         nearly_equal(observation.condition.fog_visual_range_m,
                      exclusion.condition.fog_visual_range_m) &&
         nearly_equal(observation.measured_distance_m, exclusion.measured_distance_m);
}

std::vector<Observation> active_observations(const CalibrationProblem& problem) {
  std::vector<Observation> active;
  for (const Observation& obs : problem.observations) {
    const bool excluded = std::any_of(
        problem.exclusions.begin(), problem.exclusions.end(),
        [&](const Observation& e) { return matches(obs, e); });
    if (!excluded) active.push_back(obs);
  }
  return active;
}

double& coefficient_field(TuningCoefficients& coefficients, FreeVariable variable) {
  switch (variable) {
    case FreeVariable::EtaRain: return coefficients.eta_rain;
    case FreeVariable::EtaFog: return coefficients.eta_fog;
    case FreeVariable::Xi: return coefficients.xi;
  }
  throw std::logic_error("unknown free variable");
}

double sum_squared_residuals(const TuningCoefficients& coefficients,
                             const CalibrationProblem& problem,
                             const std::vector<Observation>& observations,
                             std::vector<double>* residuals_out) {
  double total = 0.0;
  for (const Observation& obs : observations) {
    const std::optional<double> predicted = predict_range(
        problem.sensor, problem.target, obs.condition, problem.attenuation,
        coefficients, problem.grid);
    const double residual = (predicted ? *predicted : problem.grid.range_max_m) -
                            obs.measured_distance_m;
    total += residual * residual;
    if (residuals_out) residuals_out->push_back(residual);
  }
  return total;
}

struct SimplexOutcome {
  std::vector<double> best_point;
  double best_value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Nelder-Mead with box clamping. Coordinates live in log-parameter space.
SimplexOutcome nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                           std::vector<double> start, const std::vector<double>& lower,
                           const std::vector<double>& upper, double spread_tolerance,
                           int max_evaluations) {
  const size_t dim = start.size();
  const double reflection = 1.0;
  const double expansion = 2.0;
  const double contraction = 0.5;
  const double shrink = 0.5;

  const auto clamp = [&](std::vector<double>& x) {
    for (size_t j = 0; j < dim; ++j) x[j] = std::clamp(x[j], lower[j], upper[j]);
  };

  int evaluations = 0;
  const auto evaluate = [&](const std::vector<double>& x) {
    ++evaluations;
    return objective(x);
  };

  clamp(start);
  std::vector<std::vector<double>> vertex(dim + 1, start);
  for (size_t j = 0; j < dim; ++j) {
    const double step = vertex[j + 1][j] + 0.5 <= upper[j] ? 0.5 : -0.5;
    vertex[j + 1][j] += step;
    clamp(vertex[j + 1]);
  }
  std::vector<double> value(dim + 1);
  for (size_t v = 0; v <= dim; ++v) value[v] = evaluate(vertex[v]);

  std::vector<size_t> order(dim + 1);
  SimplexOutcome outcome;
  while (true) {
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return value[a] < value[b]; });
    const size_t best = order.front();
    const size_t worst = order.back();
    const size_t second_worst = order[dim == 0 ? 0 : dim - 1];

    if (value[worst] - value[best] < spread_tolerance) {
      outcome.converged = true;
      break;
    }
    if (evaluations >= max_evaluations) break;
    ++outcome.iterations;

    std::vector<double> centroid(dim, 0.0);
    for (size_t v = 0; v <= dim; ++v) {
      if (v == worst) continue;
      for (size_t j = 0; j < dim; ++j) centroid[j] += vertex[v][j];
    }
    for (size_t j = 0; j < dim; ++j) centroid[j] /= static_cast<double>(dim);

    const auto blend = [&](double scale) {
      std::vector<double> x(dim);
      for (size_t j = 0; j < dim; ++j)
        x[j] = centroid[j] + scale * (centroid[j] - vertex[worst][j]);
      clamp(x);
      return x;
    };

    std::vector<double> reflected = blend(reflection);
    const double reflected_value = evaluate(reflected);
    if (reflected_value < value[best]) {
      std::vector<double> expanded = blend(reflection * expansion);
      const double expanded_value = evaluate(expanded);
      if (expanded_value < reflected_value) {
        vertex[worst] = std::move(expanded);
        value[worst] = expanded_value;
      } else {
        vertex[worst] = std::move(reflected);
        value[worst] = reflected_value;
      }
    } else if (reflected_value < value[second_worst]) {
      vertex[worst] = std::move(reflected);
      value[worst] = reflected_value;
    } else {
      const bool outside = reflected_value < value[worst];
      std::vector<double> contracted = blend(outside ? reflection * contraction : -contraction);
      const double contracted_value = evaluate(contracted);
      if (contracted_value < std::min(reflected_value, value[worst])) {
        vertex[worst] = std::move(contracted);
        value[worst] = contracted_value;
      } else {
        for (size_t v = 0; v <= dim; ++v) {
          if (v == best) continue;
          for (size_t j = 0; j < dim; ++j)
            vertex[v][j] = vertex[best][j] + shrink * (vertex[v][j] - vertex[best][j]);
          clamp(vertex[v]);
          value[v] = evaluate(vertex[v]);
        }
      }
    }
  }

  const size_t best = static_cast<size_t>(
      std::min_element(value.begin(), value.end()) - value.begin());
  outcome.best_point = vertex[best];
  outcome.best_value = value[best];
  return outcome;
}

}  // namespace

std::string to_string(FreeVariable variable) {
  switch (variable) {
    case FreeVariable::EtaRain: return "eta_rain";
    case FreeVariable::EtaFog: return "eta_fog";
    case FreeVariable::Xi: return "xi";
  }
  throw std::logic_error("unknown free variable");
}

FreeVariable free_variable_from_string(const std::string& name) {
  if (name == "eta_rain") return FreeVariable::EtaRain;
  if (name == "eta_fog") return FreeVariable::EtaFog;
  if (name == "xi") return FreeVariable::Xi;
  throw std::invalid_argument("unknown free variable \"" + name +
                              "\" (expected eta_rain, eta_fog or xi)");
}

double calibration_objective(const TuningCoefficients& coefficients,
                             const CalibrationProblem& problem) {
  const std::vector<Observation> active = active_observations(problem);
  if (active.empty())
    throw std::invalid_argument("calibration objective: no usable observations");
  return sum_squared_residuals(coefficients, problem, active, nullptr);
}

CalibrationResult calibrate(const CalibrationProblem& problem,
                            const CalibrateOptions& options) {
  if (problem.free_variables.empty())
    throw std::invalid_argument("calibrate: no free variables");
  for (size_t i = 0; i < problem.free_variables.size(); ++i)
    for (size_t j = i + 1; j < problem.free_variables.size(); ++j)
      if (problem.free_variables[i] == problem.free_variables[j])
        throw std::invalid_argument("calibrate: duplicate free variable");
  if (!problem.bounds.empty() && problem.bounds.size() != problem.free_variables.size())
    throw std::invalid_argument("calibrate: bounds must match free variables");
  if (kind_of(problem.sensor) == SensorKind::Lidar)
    for (FreeVariable v : problem.free_variables)
      if (v == FreeVariable::Xi)
        throw std::invalid_argument("calibrate: xi applies to radar only");
  if (options.starts < 1) throw std::invalid_argument("calibrate: need at least one start");

  const std::vector<Observation> active = active_observations(problem);
  if (active.empty()) throw std::invalid_argument("calibrate: all observations excluded");
  if (active.size() < problem.free_variables.size())
    throw std::invalid_argument("calibrate: fewer observations than free variables");

  const size_t dim = problem.free_variables.size();
  std::vector<double> log_lower(dim);
  std::vector<double> log_upper(dim);
  for (size_t j = 0; j < dim; ++j) {
    const Bounds b = problem.bounds.empty() ? Bounds{} : problem.bounds[j];
    if (!(b.lower > 0.0) || !(b.upper > b.lower))
      throw std::invalid_argument("calibrate: bounds must satisfy 0 < lower < upper");
    log_lower[j] = std::log(b.lower);
    log_upper[j] = std::log(b.upper);
  }

  const auto coefficients_at = [&](const std::vector<double>& log_point) {
    TuningCoefficients c = problem.initial;
    for (size_t j = 0; j < dim; ++j)
      coefficient_field(c, problem.free_variables[j]) = std::exp(log_point[j]);
    return c;
  };
  const auto objective = [&](const std::vector<double>& log_point) {
    return sum_squared_residuals(coefficients_at(log_point), problem, active, nullptr);
  };

  // Start 0 is all ones; the rest are log-uniform draws inside the bounds,
  // drawn up front so execution order cannot affect the result.
  std::mt19937_64 rng(options.seed);
  std::vector<std::vector<double>> starts;
  starts.push_back(std::vector<double>(dim, 0.0));
  for (int s = 1; s < options.starts; ++s) {
    std::vector<double> point(dim);
    for (size_t j = 0; j < dim; ++j) {
      std::uniform_real_distribution<double> draw(log_lower[j], log_upper[j]);
      point[j] = draw(rng);
    }
    starts.push_back(std::move(point));
  }

  CalibrationResult result;
  std::optional<SimplexOutcome> winner;
  for (auto& start : starts) {
    for (size_t j = 0; j < dim; ++j) start[j] = std::clamp(start[j], log_lower[j], log_upper[j]);
    result.start_objectives_m2.push_back(objective(start));
    SimplexOutcome outcome =
        nelder_mead(objective, start, log_lower, log_upper, options.spread_tolerance_m2,
                    options.max_evaluations_per_start);
    if (!winner || outcome.best_value < winner->best_value) winner = std::move(outcome);
  }

  result.fitted = coefficients_at(winner->best_point);
  result.objective_m2 = winner->best_value;
  result.iterations = winner->iterations;
  result.converged = winner->converged;
  sum_squared_residuals(result.fitted, problem, active, &result.residuals_m);
  return result;
}

std::vector<Observation> observations_from_summaries(
    const std::vector<MeasurementSummary>& summaries, int min_points, TargetMode mode) {
  std::vector<Observation> observations;
  for (const MeasurementSummary& summary : summaries) {
    const std::optional<DetectionInterval> interval =
        max_detected_distance(summary, min_points);
    if (!interval) continue;
    double target = interval->lower_m;
    if (mode == TargetMode::Midpoint && interval->upper_m)
      target = 0.5 * (interval->lower_m + *interval->upper_m);
    observations.push_back({summary.condition, target});
  }
  return observations;
}

void apply_exclusion_preset(std::vector<MeasurementSummary>& summaries,
                            const std::string& preset_name) {
  if (preset_name != kPaperRain15mPreset)
    throw std::invalid_argument("unknown exclusion preset \"" + preset_name + "\"");
  for (MeasurementSummary& summary : summaries) {
    if (!nearly_equal(summary.condition.rain_rate_mmh, 16.0)) continue;
    if (!summary.condition.fog_is_clear()) continue;
    for (SummaryRow& row : summary.rows)
      if (nearly_equal(row.distance_m, 15.0)) row.excluded = true;
  }
}

}  // namespace wf
