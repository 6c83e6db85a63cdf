#include "calderon/solvers.hpp"

#include <array>
#include <cmath>

namespace calderon {
namespace {

constexpr std::array<std::pair<Method, std::string_view>, 10> kMethodNames{{
    {Method::dD01, "dD01"},
    {Method::dD02, "dD02"},
    {Method::dN01, "dN01"},
    {Method::dN02, "dN02"},
    {Method::iD01, "iD01"},
    {Method::iD02, "iD02"},
    {Method::iN01, "iN01"},
    {Method::iN02, "iN02"},
    {Method::transmission, "transmission"},
    {Method::burton_miller, "burton_miller"},
}};

// First-row equations fail at interior Dirichlet eigenvalues, second-row
// ones at interior Neumann eigenvalues.
std::string resonance_hint(Method method) {
  switch (method) {
    case Method::dD01:
    case Method::dN01:
    case Method::iD01:
    case Method::iN01:
      return "unique solvability of " + std::string(to_string(method)) +
             " fails exactly when -k^2 is an interior Dirichlet eigenvalue";
    case Method::dD02:
    case Method::dN02:
    case Method::iD02:
    case Method::iN02:
      return "unique solvability of " + std::string(to_string(method)) +
             " fails exactly when -k^2 is an interior Neumann eigenvalue";
    case Method::transmission:
      return "check k, k/c and alpha against the interior eigenvalues";
    case Method::burton_miller:
      return "a coupling with nonzero imaginary part should avoid resonances";
  }
  return {};
}

struct Solved {
  ComplexVector x;
  Diagnostics diagnostics;
};

Solved solve_checked(const ComplexMatrix& a, const ComplexVector& b, Method method) {
  try {
    const LuFactorization lu(a);
    Solved out{lu.solve(b), {lu.rcond(), lu.warning(), false}};
    if (out.diagnostics.warning) {
      out.diagnostics.resonance_suspected = true;
      *out.diagnostics.warning += " (" + resonance_hint(method) + ")";
    }
    return out;
  } catch (const SingularMatrixError& e) {
    throw SingularMatrixError(std::string(e.what()) + " [" + resonance_hint(method) + "]",
                              e.pivot_step());
  }
}

void require_ops(const OperatorSet& ops, const char* what) {
  if (!ops.grid) throw InvalidInput(std::string(what) + ": operator set has no grid");
}

void require_data(const ComplexVector& v, const OperatorSet& ops, const char* what) {
  if (v.size() != ops.V.rows()) {
    throw InvalidInput(std::string(what) + ": data length " + std::to_string(v.size()) +
                       " does not match grid size " + std::to_string(ops.V.rows()));
  }
}

ComplexMatrix half_identity(Eigen::Index n) { return 0.5 * ComplexMatrix::Identity(n, n); }

}  // namespace

std::string_view to_string(Method method) {
  for (const auto& [m, name] : kMethodNames) {
    if (m == method) return name;
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (const auto& [m, known] : kMethodNames) {
    if (known == name) return m;
  }
  throw InvalidInput("unknown method '" + std::string(name) +
                     "' (expected dD01, dD02, dN01, dN02, iD01, iD02, iN01, iN02, "
                     "transmission or burton_miller)");
}

bool is_direct(Method method) {
  return method == Method::dD01 || method == Method::dD02 || method == Method::dN01 ||
         method == Method::dN02;
}

bool is_indirect(Method method) {
  return method == Method::iD01 || method == Method::iD02 || method == Method::iN01 ||
         method == Method::iN02;
}

bool uses_dirichlet_data(Method method) {
  return method == Method::dD01 || method == Method::dD02 || method == Method::iD01 ||
         method == Method::iD02;
}

void ProblemSpec::validate() const {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw InvalidInput("k must be a finite positive real, got " + std::to_string(k));
  }
  const bool transmission = method == Method::transmission;
  if (transmission != c.has_value() || transmission != alpha.has_value()) {
    throw InvalidInput(transmission ? "transmission needs both c and alpha"
                                    : "c and alpha apply only to the transmission method");
  }
  if (transmission && (!(*c > 0.0) || !(*alpha > 0.0))) {
    throw InvalidInput("transmission needs c > 0 and alpha > 0");
  }
  if (coupling && method != Method::burton_miller) {
    throw InvalidInput("coupling applies only to the burton_miller method");
  }
}

Complex ProblemSpec::burton_miller_coupling() const {
  return coupling.value_or(Complex(0.0, -k));
}

Complex Representation::evaluate(const GridGeometry& grid, Vec2 z, EvalOptions options) const {
  Complex value = 0.0;
  if (dipole.size() > 0) value += dipole_weight * eval_D(grid, k, DipoleDensity(dipole), z, options);
  if (charge.size() > 0) value += charge_weight * eval_S(grid, k, ChargeDensity(charge), z, options);
  return value;
}

Complex Solution::exterior(Vec2 z, EvalOptions options) const {
  return exterior_field.evaluate(*grid, z, options);
}

Complex Solution::interior(Vec2 z, EvalOptions options) const {
  if (!interior_field) {
    throw InvalidInput(std::string(to_string(method)) + " has no interior field");
  }
  return interior_field->evaluate(*grid, z, options);
}

Solution solve_direct(const OperatorSet& ops, Method method, const Traces& beta) {
  require_ops(ops, "solve_direct");
  if (!is_direct(method)) throw InvalidInput("solve_direct: not a direct method");
  const Eigen::Index n = ops.V.rows();
  const ComplexMatrix half = half_identity(n);

  ComplexVector phi, lambda;
  Solved solved;
  switch (method) {
    case Method::dD01:
      require_data(beta.beta0, ops, "dD01");
      phi = beta.beta0;
      solved = solve_checked(ops.V, (ops.K - half) * phi, method);
      lambda = solved.x;
      break;
    case Method::dD02:
      require_data(beta.beta0, ops, "dD02");
      phi = beta.beta0;
      solved = solve_checked(half + ops.J, -(ops.W * phi), method);
      lambda = solved.x;
      break;
    case Method::dN01:
      require_data(beta.beta1, ops, "dN01");
      lambda = beta.beta1;
      solved = solve_checked(ops.K - half, ops.V * lambda, method);
      phi = solved.x;
      break;
    case Method::dN02:
      require_data(beta.beta1, ops, "dN02");
      lambda = beta.beta1;
      solved = solve_checked(-ops.W, (half + ops.J) * lambda, method);
      phi = solved.x;
      break;
    default:
      break;
  }

  Solution out;
  out.method = method;
  out.k = ops.k;
  out.grid = ops.grid;
  out.exterior_field = {ops.k, 1.0, phi, -1.0, lambda};
  out.trace = DipoleDensity(std::move(phi));
  out.flux = ChargeDensity(std::move(lambda));
  out.diagnostics = std::move(solved.diagnostics);
  return out;
}

Solution solve_indirect(const OperatorSet& ops, Method method, const Traces& beta) {
  require_ops(ops, "solve_indirect");
  if (!is_indirect(method)) throw InvalidInput("solve_indirect: not an indirect method");
  const Eigen::Index n = ops.V.rows();
  const ComplexMatrix half = half_identity(n);

  Solution out;
  out.method = method;
  out.k = ops.k;
  out.grid = ops.grid;
  out.exterior_field.k = ops.k;
  Solved solved;
  switch (method) {
    case Method::iD01:
      require_data(beta.beta0, ops, "iD01");
      solved = solve_checked(ops.V, beta.beta0, method);
      break;
    case Method::iD02:
      require_data(beta.beta0, ops, "iD02");
      solved = solve_checked(half + ops.K, beta.beta0, method);
      break;
    case Method::iN01:
      require_data(beta.beta1, ops, "iN01");
      solved = solve_checked(ops.J - half, beta.beta1, method);
      break;
    case Method::iN02:
      require_data(beta.beta1, ops, "iN02");
      solved = solve_checked(ops.W, -beta.beta1, method);
      break;
    default:
      break;
  }
  if (method == Method::iD01 || method == Method::iN01) {
    out.exterior_field.charge_weight = 1.0;
    out.exterior_field.charge = solved.x;
    out.flux = ChargeDensity(std::move(solved.x));
  } else {
    out.exterior_field.dipole_weight = 1.0;
    out.exterior_field.dipole = solved.x;
    out.trace = DipoleDensity(std::move(solved.x));
  }
  out.diagnostics = std::move(solved.diagnostics);
  return out;
}

Solution solve_transmission(const OperatorSet& exterior, const OperatorSet& interior,
                            double alpha, const Traces& beta) {
  require_ops(exterior, "solve_transmission");
  require_ops(interior, "solve_transmission");
  if (exterior.grid != interior.grid) {
    throw InvalidInput("solve_transmission: operator sets were assembled on different grids");
  }
  if (!(alpha > 0.0)) throw InvalidInput("solve_transmission: alpha must be positive");
  require_data(beta.beta0, exterior, "transmission");
  require_data(beta.beta1, exterior, "transmission");

  const Eigen::Index n = exterior.V.rows();
  const ComplexMatrix half = half_identity(n);
  ComplexMatrix a(2 * n, 2 * n);
  a.topLeftCorner(n, n) = exterior.W + alpha * interior.W;
  a.topRightCorner(n, n) = exterior.J + interior.J;
  a.bottomLeftCorner(n, n) = -(exterior.K + interior.K);
  a.bottomRightCorner(n, n) = exterior.V + interior.V / alpha;

  // Row 1 holds h-scaled companion-grid values, row 2 pointwise main-grid
  // values; both sides share the scaling so no rebalancing is needed.
  ComplexVector rhs(2 * n);
  rhs.head(n) = exterior.W * beta.beta0 + (half + exterior.J) * beta.beta1;
  rhs.tail(n) = (half - exterior.K) * beta.beta0 + exterior.V * beta.beta1;

  Solved solved = solve_checked(a, rhs, Method::transmission);
  ComplexVector phi = solved.x.head(n);
  ComplexVector lambda = solved.x.tail(n);

  Solution out;
  out.method = Method::transmission;
  out.k = exterior.k;
  out.grid = exterior.grid;
  out.exterior_field = {exterior.k, 1.0, phi - beta.beta0, -1.0, lambda - beta.beta1};
  out.interior_field = Representation{interior.k, -1.0, phi, 1.0 / alpha, lambda};
  out.trace = DipoleDensity(std::move(phi));
  out.flux = ChargeDensity(std::move(lambda));
  out.diagnostics = std::move(solved.diagnostics);
  return out;
}

Solution solve_burton_miller(const OperatorSet& ops, Complex coupling,
                             const IncidentField& incident, BurtonMillerScaling scaling) {
  require_ops(ops, "solve_burton_miller");
  const GridGeometry& grid = *ops.grid;
  const Eigen::Index n = ops.V.rows();
  const Traces beta = incident_traces(incident, grid);

  // Per-row coupling: c, or c h for the rescaled reading.
  ComplexVector row_coupling(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    row_coupling[i] = scaling == BurtonMillerScaling::h_scaled
                          ? coupling * grid.h(static_cast<std::size_t>(i))
                          : coupling;
  }
  const ComplexMatrix a =
      half_identity(n) + ops.J + row_coupling.asDiagonal() * ops.V;
  const ComplexVector rhs = beta.beta1 + row_coupling.cwiseProduct(beta.beta0);

  Solved solved = solve_checked(a, rhs, Method::burton_miller);

  Solution out;
  out.method = Method::burton_miller;
  out.k = ops.k;
  out.grid = ops.grid;
  out.exterior_field = {ops.k, 0.0, {}, -1.0, solved.x};
  out.recovered_flux = ChargeDensity(solved.x - beta.beta1);
  out.flux = ChargeDensity(std::move(solved.x));
  out.diagnostics = std::move(solved.diagnostics);
  return out;
}

Solution solve(GridPtr grid, const ProblemSpec& spec, const Traces& beta,
               const std::optional<IncidentField>& incident) {
  spec.validate();
  if (!grid) throw InvalidInput("solve: null grid");
  const OperatorSet ops = assemble_all(grid, spec.k);
  if (is_direct(spec.method)) return solve_direct(ops, spec.method, beta);
  if (is_indirect(spec.method)) return solve_indirect(ops, spec.method, beta);
  if (spec.method == Method::transmission) {
    const OperatorSet inner = assemble_all(grid, spec.k / *spec.c);
    return solve_transmission(ops, inner, *spec.alpha, beta);
  }
  if (!incident) throw InvalidInput("burton_miller needs an incident field");
  return solve_burton_miller(ops, spec.burton_miller_coupling(), *incident, spec.bm_scaling);
}

double trace_error(const DipoleDensity& phi, const ComplexVector& exact) {
  if (phi.size() != exact.size()) throw InvalidInput("trace_error: length mismatch");
  return (phi.coeffs() - exact).cwiseAbs().maxCoeff();
}

double flux_error(const GridGeometry& grid, const ChargeDensity& lambda,
                  const ComplexVector& exact) {
  if (lambda.size() != exact.size() || exact.size() != static_cast<Eigen::Index>(grid.size())) {
    throw InvalidInput("flux_error: length mismatch");
  }
  double worst = 0.0;
  for (Eigen::Index j = 0; j < exact.size(); ++j) {
    const double h = grid.h(static_cast<std::size_t>(j));
    worst = std::max(worst, std::abs(lambda.coeffs()[j] - exact[j]) / h);
  }
  return worst;
}

double flux_discrepancy(const GridGeometry& grid, const ChargeDensity& a,
                        const ChargeDensity& b) {
  return flux_error(grid, a, b.coeffs());
}

void require_same_grid(const Solution& a, const Solution& b) {
  if (!a.grid || !b.grid) throw InvalidInput("solution without grid");
  if (a.grid == b.grid) return;
  const GridGeometry& ga = *a.grid;
  const GridGeometry& gb = *b.grid;
  if (ga.size() != gb.size() || ga.eps() != gb.eps() || ga.main().m != gb.main().m) {
    throw InvalidInput("compared solutions live on different grids");
  }
}

}  // namespace calderon
