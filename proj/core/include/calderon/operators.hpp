#pragma once

#include <iosfwd>
#include <memory>

#include "calderon/geometry.hpp"
#include "calderon/types.hpp"

namespace calderon {

using GridPtr = std::shared_ptr<const GridGeometry>;

/// Which node carries the normal in the off-diagonal double-layer entries.
enum class NormalConvention {
  /// K_ij uses n_j (integration node), J_ij uses n^eps_i (observation node),
  /// matching the continuous kernels. Default.
  kernel,
  /// K_ij uses n_i, J_ij uses n^eps_j. Kept for comparison only; it breaks
  /// the discrete Calderon identities.
  swapped,
};

struct AssemblyOptions {
  NormalConvention normals = NormalConvention::kernel;
};

/// V_ij = (i/4) H0(k |m_i - m^eps_j|).
ComplexMatrix assemble_V(const GridGeometry& grid, double k);

/// Off-diagonal (ik/4) H1(k r) ((m_i - m_j) . n_j) / r with r = |m_i - m_j|;
/// diagonal s_i . n_i / (4 pi ell_i^2), the limit of the kernel.
ComplexMatrix assemble_K(const GridGeometry& grid, double k, AssemblyOptions options = {});

/// Companion-grid analogue of K for the adjoint double layer: off-diagonal
/// (ik/4) H1(k r) ((m^eps_j - m^eps_i) . n^eps_i) / r.
ComplexMatrix assemble_J(const GridGeometry& grid, double k, AssemblyOptions options = {});

/// Vt_ij = (i/4) H0(k |b^eps_i - b_j|), the breakpoint single layer used by W.
ComplexMatrix assemble_V_breakpoints(const GridGeometry& grid, double k);

/// W_ij = Vt(n(i),n(j)) + Vt(i,j) - Vt(n(i),j) - Vt(i,n(j)) - k^2 (n^eps_i . n_j) V_ji.
ComplexMatrix assemble_W(const GridGeometry& grid, double k);

/// W from precomputed V and breakpoint matrix Vt.
ComplexMatrix assemble_W(const GridGeometry& grid, double k, const ComplexMatrix& V,
                         const ComplexMatrix& Vt);

/// The four-difference part of W alone (no k^2 term). Its row sums vanish.
ComplexMatrix breakpoint_difference(const GridGeometry& grid, const ComplexMatrix& Vt);

/// The four discrete boundary operators at one wavenumber. Immutable once
/// assembled.
struct OperatorSet {
  double k = 0.0;
  ComplexMatrix V;
  ComplexMatrix K;
  ComplexMatrix J;
  ComplexMatrix W;
  GridPtr grid;
};

/// Assembles V, K, J and W, computing the breakpoint matrix once.
OperatorSet assemble_all(GridPtr grid, double k, AssemblyOptions options = {});

/// Plain-text dump: one matrix row per line, entries "re,im" separated by
/// single spaces, full precision.
void write_matrix(std::ostream& out, const ComplexMatrix& matrix);

}  // namespace calderon
