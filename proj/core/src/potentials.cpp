#include "calderon/potentials.hpp"

#include <cmath>
#include <limits>

#include "calderon/special_functions.hpp"

namespace calderon {
namespace {

void require_size(const GridGeometry& grid, Eigen::Index size, const char* what) {
  if (size != static_cast<Eigen::Index>(grid.size())) {
    throw InvalidInput(std::string(what) + ": density length " + std::to_string(size) +
                       " does not match grid size " + std::to_string(grid.size()));
  }
}

struct Nearest {
  double distance = std::numeric_limits<double>::infinity();
  std::size_t node = 0;
};

Nearest nearest_sample(const GridGeometry& grid, Vec2 z) {
  Nearest best;
  auto scan = [&](const std::vector<Vec2>& pts) {
    for (std::size_t p = 0; p < pts.size(); ++p) {
      const double d = distance(z, pts[p]);
      if (d < best.distance) best = {d, p};
    }
  };
  scan(grid.main().m);
  scan(grid.main().b);
  scan(grid.companion().m);
  scan(grid.companion().b);
  return best;
}

}  // namespace

IncidentField IncidentField::point_source(Vec2 source, double k) {
  if (!(k > 0.0)) throw InvalidInput("point source needs a positive wavenumber");
  return IncidentField(Kind::point_source, source, k);
}

IncidentField IncidentField::plane_wave(Vec2 direction, double k) {
  if (!(k > 0.0)) throw InvalidInput("plane wave needs a positive wavenumber");
  if (std::fabs(norm(direction) - 1.0) > 1e-12) {
    throw InvalidInput("plane wave direction must be a unit vector");
  }
  return IncidentField(Kind::plane_wave, direction, k);
}

Complex IncidentField::value(Vec2 z) const {
  if (kind_ == Kind::plane_wave) return std::exp(kI * (k_ * dot(anchor_, z)));
  const double r = distance(z, anchor_);
  if (!(r > 0.0)) throw InvalidInput("point source evaluated at its own source point");
  return special::hankel1_0(k_ * r);
}

CVec2 IncidentField::gradient(Vec2 z) const {
  if (kind_ == Kind::plane_wave) {
    const Complex f = kI * k_ * std::exp(kI * (k_ * dot(anchor_, z)));
    return {f * anchor_.x, f * anchor_.y};
  }
  const Vec2 d = z - anchor_;
  const double r = norm(d);
  if (!(r > 0.0)) throw InvalidInput("point source gradient evaluated at its source point");
  // d/dz H0(k|z - x0|) = -k H1(k r) (z - x0) / r
  const Complex f = -k_ * special::hankel1_1(k_ * r) / r;
  return {f * d.x, f * d.y};
}

bool has_clearance(const GridGeometry& grid, Vec2 z, EvalOptions options) {
  const Nearest best = nearest_sample(grid, z);
  return best.distance > options.clearance_factor * grid.max_ell() && best.distance > 0.0;
}

void check_clearance(const GridGeometry& grid, Vec2 z, EvalOptions options) {
  const Nearest best = nearest_sample(grid, z);
  const double required = options.clearance_factor * grid.max_ell();
  if (best.distance > required && best.distance > 0.0) return;
  throw ClearanceError("observation point (" + std::to_string(z.x) + ", " + std::to_string(z.y) +
                           ") is " + std::to_string(best.distance) + " from boundary node " +
                           std::to_string(best.node) + "; clearance " + std::to_string(required) +
                           " is required",
                       best.node);
}

Complex eval_S(const GridGeometry& grid, double k, const ChargeDensity& eta, Vec2 z,
               EvalOptions options) {
  require_size(grid, eta.size(), "eval_S");
  check_clearance(grid, z, options);
  const auto& nodes = grid.companion().m;
  Complex sum = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    sum += special::hankel1_0(k * distance(z, nodes[j])) * eta.coeffs()[j];
  }
  return Complex(0.0, 0.25) * sum;
}

Complex eval_D(const GridGeometry& grid, double k, const DipoleDensity& psi, Vec2 z,
               EvalOptions options) {
  require_size(grid, psi.size(), "eval_D");
  check_clearance(grid, z, options);
  const auto& nodes = grid.main().m;
  const auto& normals = grid.main().n;
  Complex sum = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const Vec2 d = z - nodes[j];
    const double r = norm(d);
    sum += special::hankel1_1(k * r) * (dot(d, normals[j]) / r) * psi.coeffs()[j];
  }
  return Complex(0.0, 0.25 * k) * sum;
}

Complex eval_representation(const GridGeometry& grid, double k, const DipoleDensity& phi,
                            const ChargeDensity& lambda, Vec2 z, EvalOptions options) {
  return eval_D(grid, k, phi, z, options) - eval_S(grid, k, lambda, z, options);
}

Traces incident_traces(const IncidentField& field, const GridGeometry& grid) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  if (field.kind() == IncidentField::Kind::point_source) {
    const Nearest best = nearest_sample(grid, field.anchor());
    if (best.distance < 1e-12 * (1.0 + norm(field.anchor()))) {
      throw InvalidInput("point source lies on the boundary (node " + std::to_string(best.node) +
                         ")");
    }
  }
  Traces out{ComplexVector(n), ComplexVector(n)};
  const auto& main = grid.main();
  const auto& comp = grid.companion();
  for (Eigen::Index j = 0; j < n; ++j) {
    out.beta0[j] = field.value(main.m[j]);
    out.beta1[j] = dot(field.gradient(comp.m[j]), comp.n[j]);
  }
  return out;
}

}  // namespace calderon
