#pragma once

#include <optional>
#include <string>
#include <vector>

#include "calderon/config.hpp"
#include "calderon/solvers.hpp"

namespace calderon {

enum class OutputFormat { csv, json };

inline ProblemSpec default_problem() {
  ProblemSpec p;
  p.method = Method::dD01;
  p.k = 3.0;
  return p;
}

/// One convergence experiment. Every field has a default, so an empty config
/// runs dD01 on the benchmark ellipse.
struct StudyConfig {
  std::string curve = "benchmark_ellipse";
  ProblemSpec problem = default_problem();
  double eps = kDefaultEps;
  std::vector<std::size_t> ladder{10, 20, 40, 80, 160, 320, 640};
  /// Exterior manufactured solution H0(k |z - source|); must lie inside.
  Vec2 source{0.1, 0.2};
  /// Plane-wave direction: interior field (transmission) or incident wave
  /// (burton_miller).
  Vec2 direction{0.70710678118654752, 0.70710678118654752};
  /// Defaults per method, see default_observation_points.
  std::optional<std::vector<Vec2>> observation;
  /// Clearance for observation points, in units of max ell. Smaller than the
  /// field-export default because the coarse ladder entries have ell ~ 1.
  double clearance_factor = 0.25;
  OutputFormat format = OutputFormat::csv;
  bool metadata = true;

  /// Applies recognised keys (curve, method, k, eps, N, c, alpha, coupling,
  /// bm_scaling, source, direction, observation, clearance_factor, out, meta);
  /// unknown keys throw InvalidInput.
  void apply(const ConfigEntries& entries);
  /// Ladder strictly increasing with N >= 4, eps admissible, problem valid.
  void validate() const;
  std::vector<Vec2> observation_points() const;
  /// Canonical key/value echo used in report metadata.
  ConfigEntries echo() const;
};

/// Exterior points (3, 2), (-2.5, -1.5) for the direct and indirect methods;
/// interior points (0.2, 0.4), (-0.2, -0.4) for transmission; (0.7, -0.1),
/// (-0.1, 0.3) for burton_miller, the points at which the reference
/// combined-field table was evaluated.
std::vector<Vec2> default_observation_points(Method method);

/// Names of the error columns run_study produces for a method.
std::vector<std::string> metric_names(Method method);

struct ReportRow {
  std::size_t n = 0;
  std::vector<double> errors;
  /// log2(error_prev / error); empty on the first row or when undefined.
  std::vector<std::optional<double>> ecr;
};

struct ConvergenceReport {
  std::vector<std::string> columns;
  std::vector<ReportRow> rows;
  ConfigEntries config;
  double wall_seconds = 0.0;
  bool special_functions_ok = false;
  std::string special_functions_detail;
  std::vector<std::string> warnings;
};

/// log2(coarse / fine), or nothing if either is not a positive finite number.
std::optional<double> ecr(double coarse, double fine);

/// Fills the e.c.r. columns of `rows` from their errors.
void fill_ecr(std::vector<ReportRow>& rows);

GridPtr make_grid(const StudyConfig& config, std::size_t n);

/// Solves the configured problem with its manufactured data at one N.
Solution solve_level(const StudyConfig& config, std::size_t n);

/// Errors of one level. Indirect methods have no closed-form densities; their
/// density column is the difference to the solution at 2N, which must then
/// be supplied as `finer`.
std::vector<double> level_errors(const StudyConfig& config, const Solution& solution,
                                 const Solution* finer = nullptr);

/// max_j of the pointwise density difference between a solution at N and one
/// at 2N on the same curve. Dipole densities are compared on the shared main
/// nodes; charge densities as h^{-1} eta through trigonometric interpolation
/// of the finer samples.
double density_self_difference(const Solution& coarse, const Solution& fine);

/// Runs the ladder in order. Errors are rethrown with the offending N.
ConvergenceReport run_study(const StudyConfig& config);

}  // namespace calderon
