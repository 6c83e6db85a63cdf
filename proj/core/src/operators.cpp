#include "calderon/operators.hpp"

#include <cstdio>
#include <ostream>
#include <string>

#include "calderon/special_functions.hpp"

namespace calderon {
namespace {

void require_wavenumber(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw InvalidInput("wavenumber must be a finite positive real, got " + std::to_string(k));
  }
}

// Exceptions must not leave an OpenMP region; loops record the first
// coincident pair here and the caller throws afterwards.
class CoincidenceGuard {
 public:
  explicit CoincidenceGuard(const char* what) : what_(what) {}

  void record(Eigen::Index i, Eigen::Index j) {
#pragma omp critical(calderon_coincidence)
    {
      if (i_ < 0) {
        i_ = i;
        j_ = j;
      }
    }
  }

  void check() const {
    if (i_ < 0) return;
    throw NumericalError(std::string(what_) + ": row node " + std::to_string(i_) +
                         " and column node " + std::to_string(j_) +
                         " coincide; the curve is degenerate or self-intersecting");
  }

 private:
  const char* what_;
  Eigen::Index i_ = -1;
  Eigen::Index j_ = -1;
};

// (i/4) H0(k |a_i - b_j|) over all pairs.
ComplexMatrix single_layer_block(const std::vector<Vec2>& rows, const std::vector<Vec2>& cols,
                                 double k, const char* what) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto m = static_cast<Eigen::Index>(cols.size());
  ComplexMatrix out(n, m);
  const Complex quarter_i(0.0, 0.25);
  CoincidenceGuard guard(what);
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const double r = distance(rows[i], cols[j]);
      if (!(r > 0.0)) {
        guard.record(i, j);
        out(i, j) = 0.0;
        continue;
      }
      out(i, j) = quarter_i * special::hankel1_0(k * r);
    }
  }
  guard.check();
  return out;
}

// Shared shape of K and J: off-diagonal (ik/4) H1(kr) (d . normal)/r with
// d pointing from the integration node to the observation node (K) or the
// reverse (J); diagonal s . n / (4 pi ell^2).
ComplexMatrix double_layer_block(const GridSamples& g, double k, bool observation_normal,
                                 bool reverse_direction, const char* what) {
  const auto n = static_cast<Eigen::Index>(g.m.size());
  ComplexMatrix out(n, n);
  const Complex ik_quarter(0.0, 0.25 * k);
  CoincidenceGuard guard(what);
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) {
        out(i, i) = dot(g.s2[i], g.n[i]) / (4.0 * kPi * g.ell[i] * g.ell[i]);
        continue;
      }
      const Vec2 d = reverse_direction ? g.m[j] - g.m[i] : g.m[i] - g.m[j];
      const double r = norm(d);
      if (!(r > 0.0)) {
        guard.record(i, j);
        out(i, j) = 0.0;
        continue;
      }
      const Vec2 normal = observation_normal ? g.n[i] : g.n[j];
      out(i, j) = ik_quarter * special::hankel1_1(k * r) * (dot(d, normal) / r);
    }
  }
  guard.check();
  return out;
}

}  // namespace

ComplexMatrix assemble_V(const GridGeometry& grid, double k) {
  require_wavenumber(k);
  return single_layer_block(grid.main().m, grid.companion().m, k, "assemble_V");
}

ComplexMatrix assemble_K(const GridGeometry& grid, double k, AssemblyOptions options) {
  require_wavenumber(k);
  const bool observation_normal = options.normals == NormalConvention::swapped;
  return double_layer_block(grid.main(), k, observation_normal, false, "assemble_K");
}

ComplexMatrix assemble_J(const GridGeometry& grid, double k, AssemblyOptions options) {
  require_wavenumber(k);
  const bool observation_normal = options.normals == NormalConvention::kernel;
  return double_layer_block(grid.companion(), k, observation_normal, true, "assemble_J");
}

ComplexMatrix assemble_V_breakpoints(const GridGeometry& grid, double k) {
  require_wavenumber(k);
  return single_layer_block(grid.companion().b, grid.main().b, k, "assemble_W");
}

ComplexMatrix breakpoint_difference(const GridGeometry& grid, const ComplexMatrix& Vt) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  ComplexMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto ni = static_cast<Eigen::Index>(grid.next(i));
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto nj = static_cast<Eigen::Index>(grid.next(j));
      out(i, j) = Vt(ni, nj) + Vt(i, j) - Vt(ni, j) - Vt(i, nj);
    }
  }
  return out;
}

ComplexMatrix assemble_W(const GridGeometry& grid, double k, const ComplexMatrix& V,
                         const ComplexMatrix& Vt) {
  require_wavenumber(k);
  const auto n = static_cast<Eigen::Index>(grid.size());
  if (V.rows() != n || Vt.rows() != n) throw InvalidInput("assemble_W: matrix size mismatch");
  ComplexMatrix W = breakpoint_difference(grid, Vt);
  const auto& nc = grid.companion().n;
  const auto& nm = grid.main().n;
  const double k2 = k * k;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      W(i, j) -= k2 * dot(nc[i], nm[j]) * V(j, i);
    }
  }
  return W;
}

ComplexMatrix assemble_W(const GridGeometry& grid, double k) {
  return assemble_W(grid, k, assemble_V(grid, k), assemble_V_breakpoints(grid, k));
}

OperatorSet assemble_all(GridPtr grid, double k, AssemblyOptions options) {
  if (!grid) throw InvalidInput("assemble_all: null grid");
  OperatorSet ops;
  ops.k = k;
  ops.grid = grid;
  ops.V = assemble_V(*grid, k);
  ops.K = assemble_K(*grid, k, options);
  ops.J = assemble_J(*grid, k, options);
  ops.W = assemble_W(*grid, k, ops.V, assemble_V_breakpoints(*grid, k));
  return ops;
}

void write_matrix(std::ostream& out, const ComplexMatrix& matrix) {
  char buffer[64];
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
      std::snprintf(buffer, sizeof buffer, "%.17g,%.17g", matrix(i, j).real(),
                    matrix(i, j).imag());
      if (j > 0) out << ' ';
      out << buffer;
    }
    out << '\n';
  }
}

}  // namespace calderon
