#include "calderon/study.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>

#include "calderon/selftest.hpp"

namespace calderon {
namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(Vec2 p) { return fmt(p.x) + " " + fmt(p.y); }

// Winding number of the main-grid polygon of each component around z.
bool inside_curve(const GridGeometry& grid, Vec2 z) {
  const auto& m = grid.main().m;
  for (std::size_t c = 0; c < grid.component_count(); ++c) {
    double turn = 0.0;
    const std::size_t off = grid.component_offset(c);
    for (std::size_t q = 0; q < grid.component_size(c); ++q) {
      const std::size_t p = off + q;
      const Vec2 a = m[p] - z;
      const Vec2 b = m[grid.next(p)] - z;
      turn += std::atan2(a.x * b.y - a.y * b.x, dot(a, b));
    }
    if (std::fabs(turn) > kPi) return true;
  }
  return false;
}

IncidentField exterior_solution(const StudyConfig& config) {
  return IncidentField::point_source(config.source, config.problem.k);
}

IncidentField interior_solution(const StudyConfig& config) {
  return IncidentField::plane_wave(config.direction, config.problem.k / *config.problem.c);
}

// Samples f_q at t0 + q h, q = 0..M-1, of a 1-periodic function; returns the
// trigonometric interpolant at t.
class TrigInterpolant {
 public:
  TrigInterpolant(const ComplexVector& samples, double t0) : t0_(t0) {
    const auto m = samples.size();
    coeffs_.resize(m);
    // c_r = (1/M) sum_q f_q exp(-2 pi i r q / M), r = 0..M-1
    for (Eigen::Index r = 0; r < m; ++r) {
      Complex sum = 0.0;
      for (Eigen::Index q = 0; q < m; ++q) {
        sum += samples[q] * std::polar(1.0, -2.0 * kPi * static_cast<double>((r * q) % m) / m);
      }
      coeffs_[r] = sum / static_cast<double>(m);
    }
  }

  Complex operator()(double t) const {
    const auto m = coeffs_.size();
    const double x = (t - t0_) * static_cast<double>(m);  // in units of the sample spacing
    Complex sum = 0.0;
    for (Eigen::Index r = 0; r < m; ++r) {
      // Frequencies folded into [-M/2, M/2); the Nyquist mode is split evenly.
      const Eigen::Index freq = r < (m + 1) / 2 ? r : r - m;
      if (m % 2 == 0 && r == m / 2) {
        sum += coeffs_[r] * std::cos(kPi * x);
        continue;
      }
      sum += coeffs_[r] * std::polar(1.0, 2.0 * kPi * static_cast<double>(freq) * x / m);
    }
    return sum;
  }

 private:
  double t0_;
  ComplexVector coeffs_;
};

template <class E>
[[noreturn]] void rethrow_at(const E& e, std::size_t n) {
  throw E("N = " + std::to_string(n) + ": " + e.what());
}

// Runs f, attaching N to any library error without changing its category.
template <class F>
auto at_level(std::size_t n, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const SingularMatrixError& e) {
    throw SingularMatrixError("N = " + std::to_string(n) + ": " + e.what(), e.pivot_step());
  } catch (const ClearanceError& e) {
    throw ClearanceError("N = " + std::to_string(n) + ": " + e.what(), e.nearest_node());
  } catch (const GeometryError& e) {
    rethrow_at(e, n);
  } catch (const InvalidInput& e) {
    rethrow_at(e, n);
  } catch (const NumericalError& e) {
    rethrow_at(e, n);
  } catch (const IoError& e) {
    rethrow_at(e, n);
  }
}

}  // namespace

void StudyConfig::apply(const ConfigEntries& entries) {
  for (const auto& [key, value] : entries) {
    if (key == "curve") {
      curve = value;
    } else if (key == "method") {
      problem.method = parse_method(value);
    } else if (key == "k") {
      problem.k = parse_real(value, "k");
    } else if (key == "eps") {
      eps = parse_real(value, "eps");
    } else if (key == "N") {
      ladder = parse_ladder(value);
    } else if (key == "c") {
      problem.c = parse_real(value, "c");
    } else if (key == "alpha") {
      problem.alpha = parse_real(value, "alpha");
    } else if (key == "coupling") {
      problem.coupling = parse_complex(value);
    } else if (key == "bm_scaling") {
      if (value == "as_printed") {
        problem.bm_scaling = BurtonMillerScaling::as_printed;
      } else if (value == "h_scaled") {
        problem.bm_scaling = BurtonMillerScaling::h_scaled;
      } else {
        throw InvalidInput("bm_scaling must be as_printed or h_scaled");
      }
    } else if (key == "source") {
      source = parse_point(value);
    } else if (key == "direction") {
      direction = parse_point(value);
    } else if (key == "observation") {
      observation = parse_points(value);
    } else if (key == "clearance_factor") {
      clearance_factor = parse_real(value, "clearance_factor");
    } else if (key == "out") {
      if (value == "csv") {
        format = OutputFormat::csv;
      } else if (value == "json") {
        format = OutputFormat::json;
      } else {
        throw InvalidInput("out must be csv or json");
      }
    } else if (key == "meta") {
      if (value != "true" && value != "false") throw InvalidInput("meta must be true or false");
      metadata = value == "true";
    } else {
      throw InvalidInput("unknown config key '" + key + "'");
    }
  }
}

void StudyConfig::validate() const {
  problem.validate();
  validate_eps(eps);
  if (ladder.empty()) throw InvalidInput("N ladder is empty");
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (ladder[i] < 4) throw InvalidInput("every N must be at least 4");
    if (i > 0 && ladder[i] <= ladder[i - 1]) {
      throw InvalidInput("N ladder must be strictly increasing");
    }
  }
  if (!(clearance_factor >= 0.0)) throw InvalidInput("clearance_factor must be >= 0");
  if (std::fabs(norm(direction) - 1.0) > 1e-12) {
    throw InvalidInput("direction must be a unit vector");
  }
  if (observation && observation->empty()) throw InvalidInput("no observation points");
}

std::vector<Vec2> StudyConfig::observation_points() const {
  return observation ? *observation : default_observation_points(problem.method);
}

ConfigEntries StudyConfig::echo() const {
  ConfigEntries out{{"curve", curve},
                    {"method", std::string(to_string(problem.method))},
                    {"k", fmt(problem.k)},
                    {"eps", fmt(eps)}};
  std::string ns;
  for (auto n : ladder) ns += (ns.empty() ? "" : ",") + std::to_string(n);
  out.emplace_back("N", ns);
  if (problem.c) out.emplace_back("c", fmt(*problem.c));
  if (problem.alpha) out.emplace_back("alpha", fmt(*problem.alpha));
  if (problem.method == Method::burton_miller) {
    const Complex c = problem.burton_miller_coupling();
    out.emplace_back("coupling", fmt(c.real()) + "," + fmt(c.imag()));
    out.emplace_back("bm_scaling", problem.bm_scaling == BurtonMillerScaling::as_printed
                                       ? "as_printed"
                                       : "h_scaled");
  }
  if (problem.method != Method::burton_miller) out.emplace_back("source", fmt(source));
  if (problem.method == Method::transmission || problem.method == Method::burton_miller) {
    out.emplace_back("direction", fmt(direction));
  }
  std::string obs;
  for (auto p : observation_points()) obs += (obs.empty() ? "" : "; ") + fmt(p);
  out.emplace_back("observation", obs);
  out.emplace_back("clearance_factor", fmt(clearance_factor));
  return out;
}

std::vector<Vec2> default_observation_points(Method method) {
  switch (method) {
    case Method::transmission:
      return {{0.2, 0.4}, {-0.2, -0.4}};
    case Method::burton_miller:
      return {{0.7, -0.1}, {-0.1, 0.3}};
    default:
      return {{3.0, 2.0}, {-2.5, -1.5}};
  }
}

std::vector<std::string> metric_names(Method method) {
  switch (method) {
    case Method::dD01:
    case Method::dD02:
      return {"E_lambda", "E_field"};
    case Method::dN01:
    case Method::dN02:
      return {"E_phi", "E_field"};
    case Method::iD01:
    case Method::iN01:
      return {"D_eta", "E_field"};
    case Method::iD02:
    case Method::iN02:
      return {"D_psi", "E_field"};
    case Method::transmission:
      return {"E_lambda", "E_phi", "E_V"};
    case Method::burton_miller:
      return {"E_U", "E_xi"};
  }
  return {};
}

std::optional<double> ecr(double coarse, double fine) {
  if (!(coarse > 0.0) || !(fine > 0.0) || !std::isfinite(coarse) || !std::isfinite(fine)) {
    return std::nullopt;
  }
  return std::log2(coarse / fine);
}

void fill_ecr(std::vector<ReportRow>& rows) {
  for (std::size_t r = 0; r < rows.size(); ++r) {
    rows[r].ecr.assign(rows[r].errors.size(), std::nullopt);
    if (r == 0) continue;
    for (std::size_t c = 0; c < rows[r].errors.size(); ++c) {
      rows[r].ecr[c] = ecr(rows[r - 1].errors[c], rows[r].errors[c]);
    }
  }
}

GridPtr make_grid(const StudyConfig& config, std::size_t n) {
  const auto curves = parse_curves(config.curve);
  return std::make_shared<const GridGeometry>(sample_grids(curves, n, config.eps));
}

Solution solve_level(const StudyConfig& config, std::size_t n) {
  return at_level(n, [&] {
    const GridPtr grid = make_grid(config, n);
    const ProblemSpec& spec = config.problem;
    const Method method = spec.method;
    if (method == Method::burton_miller) {
      return solve(grid, spec, {}, IncidentField::plane_wave(config.direction, spec.k));
    }
    if (!inside_curve(*grid, config.source)) {
      throw InvalidInput("source point (" + fmt(config.source) +
                         ") must lie inside the curve for an exterior manufactured solution");
    }
    const Traces exterior = incident_traces(exterior_solution(config), *grid);
    if (method == Method::transmission) {
      const Traces interior = incident_traces(interior_solution(config), *grid);
      const Traces jumps{interior.beta0 - exterior.beta0,
                         *spec.alpha * interior.beta1 - exterior.beta1};
      return solve(grid, spec, jumps);
    }
    return solve(grid, spec, exterior);
  });
}

std::vector<double> level_errors(const StudyConfig& config, const Solution& solution,
                                 const Solution* finer) {
  const GridGeometry& grid = *solution.grid;
  const EvalOptions eval{config.clearance_factor};
  const auto points = config.observation_points();
  const Method method = solution.method;

  if (method == Method::transmission) {
    const IncidentField v = interior_solution(config);
    const Traces exact = incident_traces(v, grid);
    const double alpha = *config.problem.alpha;
    return {flux_error(grid, *solution.flux, alpha * exact.beta1),
            trace_error(*solution.trace, exact.beta0),
            field_error([&](Vec2 z) { return solution.interior(z, eval); },
                        [&](Vec2 z) { return v.value(z); }, points)};
  }

  if (method == Method::burton_miller) {
    const IncidentField inc = IncidentField::plane_wave(config.direction, config.problem.k);
    const Traces data = incident_traces(inc, grid);
    // Reference flux from dD01 for the same sound-soft problem.
    const OperatorSet ops = assemble_all(solution.grid, config.problem.k);
    const Solution direct = solve_direct(ops, Method::dD01, Traces{-data.beta0, {}});
    return {field_error([&](Vec2 z) { return eval_S(grid, solution.k, *solution.flux, z, eval); },
                        [&](Vec2 z) { return inc.value(z); }, points),
            flux_discrepancy(grid, *direct.flux, *solution.recovered_flux)};
  }

  const IncidentField u = exterior_solution(config);
  const double field = field_error([&](Vec2 z) { return solution.exterior(z, eval); },
                                   [&](Vec2 z) { return u.value(z); }, points);
  if (is_direct(method)) {
    const Traces exact = incident_traces(u, grid);
    const double density = uses_dirichlet_data(method)
                               ? flux_error(grid, *solution.flux, exact.beta1)
                               : trace_error(*solution.trace, exact.beta0);
    return {density, field};
  }
  if (!finer) throw InvalidInput("indirect methods need the solution at 2N for the density column");
  return {density_self_difference(solution, *finer), field};
}

double density_self_difference(const Solution& coarse, const Solution& fine) {
  const GridGeometry& gc = *coarse.grid;
  const GridGeometry& gf = *fine.grid;
  if (coarse.method != fine.method || gc.component_count() != gf.component_count() ||
      gc.eps() != gf.eps()) {
    throw InvalidInput("density_self_difference: solutions are not comparable");
  }
  for (std::size_t c = 0; c < gc.component_count(); ++c) {
    if (gf.component_size(c) != 2 * gc.component_size(c)) {
      throw InvalidInput("density_self_difference: the finer grid must have twice the nodes");
    }
  }

  double worst = 0.0;
  if (coarse.trace && fine.trace) {
    // Main node q of the coarse grid sits at (q + 1) / N = (2q + 2) / (2N).
    for (std::size_t c = 0; c < gc.component_count(); ++c) {
      const std::size_t oc = gc.component_offset(c);
      const std::size_t of = gf.component_offset(c);
      for (std::size_t q = 0; q < gc.component_size(c); ++q) {
        const Complex a = coarse.trace->coeffs()[static_cast<Eigen::Index>(oc + q)];
        const Complex b = fine.trace->coeffs()[static_cast<Eigen::Index>(of + 2 * q + 1)];
        worst = std::max(worst, std::abs(a - b));
      }
    }
    return worst;
  }
  if (!coarse.flux || !fine.flux) throw InvalidInput("density_self_difference: no density");

  for (std::size_t c = 0; c < gc.component_count(); ++c) {
    const std::size_t oc = gc.component_offset(c);
    const std::size_t of = gf.component_offset(c);
    const auto nf = static_cast<Eigen::Index>(gf.component_size(c));
    const double hf = gf.h(of);
    const double hc = gc.h(oc);
    const ComplexVector pointwise = fine.flux->coeffs().segment(static_cast<Eigen::Index>(of), nf) / hf;
    const TrigInterpolant interp(pointwise, gf.companion().t[of]);
    for (std::size_t q = 0; q < gc.component_size(c); ++q) {
      const Complex a = coarse.flux->coeffs()[static_cast<Eigen::Index>(oc + q)] / hc;
      worst = std::max(worst, std::abs(a - interp(gc.companion().t[oc + q])));
    }
  }
  return worst;
}

ConvergenceReport run_study(const StudyConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();

  ConvergenceReport report;
  report.columns = metric_names(config.problem.method);
  report.config = config.echo();
  const auto checks = special_function_checks();
  report.special_functions_ok = all_passed(checks);
  for (const auto& c : checks) {
    if (!report.special_functions_detail.empty()) report.special_functions_detail += "; ";
    report.special_functions_detail += c.name + ": " + c.detail;
  }

  const bool needs_finer = is_indirect(config.problem.method);
  std::map<std::size_t, Solution> cache;
  auto level = [&](std::size_t n) -> const Solution& {
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, solve_level(config, n)).first;
    return it->second;
  };

  for (std::size_t n : config.ladder) {
    const Solution& s = level(n);
    const Solution* finer = needs_finer ? &level(2 * n) : nullptr;
    ReportRow row;
    row.n = n;
    row.errors = at_level(n, [&] { return level_errors(config, s, finer); });
    if (s.diagnostics.warning) {
      report.warnings.push_back("N = " + std::to_string(n) + ": " + *s.diagnostics.warning);
    }
    report.rows.push_back(std::move(row));
    // Levels below n are no longer needed.
    cache.erase(cache.begin(), cache.lower_bound(needs_finer ? 2 * n : n + 1));
  }
  fill_ecr(report.rows);
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace calderon
