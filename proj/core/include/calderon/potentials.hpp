#pragma once

#include <string>

#include "calderon/geometry.hpp"
#include "calderon/types.hpp"

namespace calderon {

enum class DensityKind {
  /// Coefficients of point charges at the companion-grid nodes; approximately
  /// h times the pointwise density. Input of S_h, V_h and J_h.
  charge,
  /// Pointwise values at the main-grid nodes. Input of D_h, K_h and W_h.
  dipole,
};

/// Coefficient vector tagged with its convention, so that passing a charge
/// density where a dipole density is expected fails to compile.
template <DensityKind Kind>
class Density {
 public:
  static constexpr DensityKind kind = Kind;

  Density() = default;
  explicit Density(ComplexVector coeffs) : coeffs_(std::move(coeffs)) {}

  const ComplexVector& coeffs() const { return coeffs_; }
  Eigen::Index size() const { return coeffs_.size(); }

  friend Density operator+(const Density& a, const Density& b) {
    return Density(a.coeffs_ + b.coeffs_);
  }

 private:
  ComplexVector coeffs_;
};

using ChargeDensity = Density<DensityKind::charge>;
using DipoleDensity = Density<DensityKind::dipole>;

/// Analytic Helmholtz fields used as incident waves and manufactured solutions.
class IncidentField {
 public:
  enum class Kind { point_source, plane_wave };

  /// U(z) = H0(k |z - x0|); radiating, singular at x0.
  static IncidentField point_source(Vec2 source, double k);
  /// U(z) = exp(i k d . z); |d| must be 1 (within 1e-12).
  static IncidentField plane_wave(Vec2 direction, double k);

  Complex value(Vec2 z) const;
  CVec2 gradient(Vec2 z) const;

  Kind kind() const { return kind_; }
  double wavenumber() const { return k_; }
  /// Source point (point_source) or direction (plane_wave).
  Vec2 anchor() const { return anchor_; }

 private:
  IncidentField(Kind kind, Vec2 anchor, double k) : kind_(kind), anchor_(anchor), k_(k) {}

  Kind kind_;
  Vec2 anchor_;
  double k_;
};

struct EvalOptions {
  /// Observation points must stay at least clearance_factor * max_i ell_i
  /// away from every sampled boundary point.
  double clearance_factor = 10.0;
};

class ClearanceError : public InvalidInput {
 public:
  ClearanceError(const std::string& what, std::size_t nearest_node)
      : InvalidInput(what), nearest_node_(nearest_node) {}
  std::size_t nearest_node() const { return nearest_node_; }

 private:
  std::size_t nearest_node_;
};

/// Throws ClearanceError naming the nearest node if z is too close to the
/// sampled boundary.
void check_clearance(const GridGeometry& grid, Vec2 z, EvalOptions options = {});
/// Same test without throwing.
bool has_clearance(const GridGeometry& grid, Vec2 z, EvalOptions options = {});

/// S_h(z) eta = sum_j (i/4) H0(k |z - m^eps_j|) eta_j.
Complex eval_S(const GridGeometry& grid, double k, const ChargeDensity& eta, Vec2 z,
               EvalOptions options = {});

/// D_h(z) psi = sum_j (ik/4) H1(k |z - m_j|) ((z - m_j) . n_j / |z - m_j|) psi_j.
Complex eval_D(const GridGeometry& grid, double k, const DipoleDensity& psi, Vec2 z,
               EvalOptions options = {});

/// Discrete representation formula U_h(z) = D_h(z) phi - S_h(z) lambda.
Complex eval_representation(const GridGeometry& grid, double k, const DipoleDensity& phi,
                            const ChargeDensity& lambda, Vec2 z, EvalOptions options = {});

/// Sampled Cauchy data of a field: beta0_j = U(m_j) on the main grid and
/// beta1_j = grad U(m^eps_j) . n^eps_j on the companion grid, which carries
/// the factor h through n^eps_j.
struct Traces {
  ComplexVector beta0;
  ComplexVector beta1;
};

Traces incident_traces(const IncidentField& field, const GridGeometry& grid);

}  // namespace calderon
