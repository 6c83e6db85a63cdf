#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "calderon/linsolve.hpp"
#include "calderon/operators.hpp"
#include "calderon/potentials.hpp"

namespace calderon {

enum class Method { dD01, dD02, dN01, dN02, iD01, iD02, iN01, iN02, transmission, burton_miller };

std::string_view to_string(Method method);
/// Throws InvalidInput for unknown names.
Method parse_method(std::string_view name);

bool is_direct(Method method);
bool is_indirect(Method method);
/// Methods whose boundary condition is Dirichlet data (dD*, iD*).
bool uses_dirichlet_data(Method method);

/// How the Burton-Miller combination mixes the J rows (h-scaled) with the V
/// rows (pointwise). as_printed: 1/2 I + J + c V with data beta1 + c beta0.
/// h_scaled: c is multiplied by h in both places.
enum class BurtonMillerScaling { as_printed, h_scaled };

struct ProblemSpec {
  Method method = Method::dD01;
  double k = 1.0;
  /// Transmission only: interior wavenumber is k / c.
  std::optional<double> c;
  /// Transmission only.
  std::optional<double> alpha;
  /// Burton-Miller only; defaults to -i k when absent.
  std::optional<Complex> coupling;
  BurtonMillerScaling bm_scaling = BurtonMillerScaling::as_printed;

  /// Checks k > 0 and that c/alpha/coupling appear only where they belong.
  void validate() const;
  Complex burton_miller_coupling() const;
};

/// Field of the form a D_k psi + b S_k eta at one wavenumber.
struct Representation {
  double k = 0.0;
  Complex dipole_weight = 0.0;
  ComplexVector dipole;
  Complex charge_weight = 0.0;
  ComplexVector charge;

  Complex evaluate(const GridGeometry& grid, Vec2 z, EvalOptions options = {}) const;
};

struct Diagnostics {
  double rcond = 0.0;
  std::optional<std::string> warning;
  /// Set when the condition estimate crossed the warning threshold.
  bool resonance_suspected = false;
};

struct Solution {
  Method method = Method::dD01;
  double k = 0.0;
  GridPtr grid;
  /// phi (direct, transmission) or psi (double-layer indirect methods).
  std::optional<DipoleDensity> trace;
  /// lambda (direct, transmission), eta (single-layer indirect) or xi
  /// (Burton-Miller). h-scaled.
  std::optional<ChargeDensity> flux;
  /// Burton-Miller only: lambda_j = xi_j - beta1_j.
  std::optional<ChargeDensity> recovered_flux;
  Representation exterior_field;
  /// Transmission only.
  std::optional<Representation> interior_field;
  Diagnostics diagnostics;

  Complex exterior(Vec2 z, EvalOptions options = {}) const;
  /// Throws InvalidInput when the method has no interior field.
  Complex interior(Vec2 z, EvalOptions options = {}) const;
};

/// dD01: V lambda = (-1/2 I + K) beta0      dD02: (1/2 I + J) lambda = -W beta0
/// dN01: (-1/2 I + K) phi = V beta1         dN02: -W phi = (1/2 I + J) beta1
/// The field is U_h = D_h phi - S_h lambda.
Solution solve_direct(const OperatorSet& ops, Method method, const Traces& beta);

/// iD01: V eta = beta0, U = S eta           iD02: (1/2 I + K) psi = beta0, U = D psi
/// iN01: (-1/2 I + J) eta = beta1, U = S eta iN02: W psi = -beta1, U = D psi
Solution solve_indirect(const OperatorSet& ops, Method method, const Traces& beta);

/// Symmetric coupling for U outside (wavenumber k) and V inside (k / c) with
/// gamma U + beta0 = gamma V and d_n U + beta1 = alpha d_n V. Unknowns are the
/// interior Cauchy data phi = gamma V and lambda = alpha d_n V.
Solution solve_transmission(const OperatorSet& exterior, const OperatorSet& interior,
                            double alpha, const Traces& beta);

/// Sound-soft scattering of `incident`: (1/2 I + J + c V) xi = beta1 + c beta0,
/// scattered field U = -S xi.
Solution solve_burton_miller(const OperatorSet& ops, Complex coupling,
                             const IncidentField& incident,
                             BurtonMillerScaling scaling = BurtonMillerScaling::as_printed);

/// Assembles what the method needs on `grid` and dispatches. For Burton-Miller
/// `incident` is the incident wave; for every other method `beta` is used.
Solution solve(GridPtr grid, const ProblemSpec& spec, const Traces& beta,
               const std::optional<IncidentField>& incident = std::nullopt);

// --- error metrics ------------------------------------------------------

/// max_j |phi_j - exact_j|.
double trace_error(const DipoleDensity& phi, const ComplexVector& exact);
/// max_j |h^{-1} lambda_j - h^{-1} exact_j|, where exact is h-scaled like
/// incident_traces' beta1.
double flux_error(const GridGeometry& grid, const ChargeDensity& lambda,
                  const ComplexVector& exact);
/// Same comparison between two computed fluxes on the same grid.
double flux_discrepancy(const GridGeometry& grid, const ChargeDensity& a,
                        const ChargeDensity& b);
/// max over points of |computed(z) - exact(z)|.
template <class Computed, class Exact>
double field_error(Computed&& computed, Exact&& exact, std::span<const Vec2> points) {
  double worst = 0.0;
  for (const Vec2& z : points) worst = std::max(worst, std::abs(computed(z) - exact(z)));
  return worst;
}

/// Throws InvalidInput unless the two solutions live on the same grid.
void require_same_grid(const Solution& a, const Solution& b);

}  // namespace calderon
