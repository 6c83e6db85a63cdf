#include <chrono>
#include <cmath>
#include <memory>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "bessel_oracle.hpp"
#include "calderon/operators.hpp"
#include "calderon/potentials.hpp"

namespace {

using namespace calderon;
using calderon::testing::oracle_bessel;

Complex oracle_h0(double x) {
  const auto b = oracle_bessel(x);
  return {b.j0, b.y0};
}
Complex oracle_h1(double x) {
  const auto b = oracle_bessel(x);
  return {b.j1, b.y1};
}

GridPtr grid_of(const ParametrizedCurve& c, std::size_t n, double eps = kDefaultEps) {
  return std::make_shared<const GridGeometry>(sample_grids(c, n, eps));
}

double circulant_defect(const ComplexMatrix& a) {
  const Eigen::Index n = a.rows();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      worst = std::max(worst, std::abs(a(i, j) - a((i + 1) % n, (j + 1) % n)));
    }
  }
  return worst;
}

TEST(Operators, SingleLayerEntryOnCircle) {
  // Node 0 sits at t = 1/4, its companion at t = 7/24: chord 2 sin(pi / 24).
  const GridPtr g = grid_of(make_circle(1.0), 4);
  const ComplexMatrix V = assemble_V(*g, 1.0);
  const Complex want = Complex(0.0, 0.25) * oracle_h0(2.0 * std::sin(kPi / 24.0));
  EXPECT_LE(std::abs(V(0, 0) - want), 1e-14);
}

TEST(Operators, SingleLayerBoundedByPrefactor) {
  const GridPtr g = grid_of(make_benchmark_ellipse(), 20);
  const ComplexMatrix V = assemble_V(*g, 3.0);
  double bound = 0.0;
  for (std::size_t i = 0; i < g->size(); ++i) {
    for (std::size_t j = 0; j < g->size(); ++j) {
      bound = std::max(bound, std::abs(oracle_h0(3.0 * distance(g->main().m[i], g->companion().m[j]))));
    }
  }
  EXPECT_LE(V.cwiseAbs().maxCoeff(), 0.25 * bound * (1 + 1e-12));
}

TEST(Operators, DoubleLayerEntriesAgainstScalarOracle) {
  const double k = 1.0;
  const GridPtr g = grid_of(make_circle(1.0), 4);
  const ComplexMatrix K = assemble_K(*g, k);
  const auto& m = g->main().m;
  const auto& n = g->main().n;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      const Vec2 d = m[i] - m[j];
      const double r = norm(d);
      const Complex want = Complex(0.0, k / 4) * oracle_h1(k * r) * dot(d, n[j]) / r;
      EXPECT_LE(std::abs(K(i, j) - want), 1e-14) << i << "," << j;
    }
  }
  // n_j at t_j = (j + 1) / 4 has direction (cos, sin) of 2 pi t_j and length 2 pi h.
  const Vec2 d = m[0] - m[1];
  const double h = 0.25;
  const double numer = 2 * kPi * h * (std::cos(2 * kPi * 2 * h) * d.x + std::sin(2 * kPi * 2 * h) * d.y);
  EXPECT_NEAR(dot(d, n[1]), numer, 1e-14);
}

TEST(Operators, AdjointDoubleLayerEntriesAgainstScalarOracle) {
  const double k = 2.0;
  const GridPtr g = grid_of(make_benchmark_ellipse(), 9);
  const ComplexMatrix J = assemble_J(*g, k);
  const auto& m = g->companion().m;
  const auto& n = g->companion().n;
  for (int i = 0; i < 9; ++i) {
    for (int j = 0; j < 9; ++j) {
      if (i == j) continue;
      const Vec2 d = m[j] - m[i];
      const double r = norm(d);
      const Complex want = Complex(0.0, k / 4) * oracle_h1(k * r) * dot(d, n[i]) / r;
      EXPECT_LE(std::abs(J(i, j) - want), 1e-13 * std::abs(want) + 1e-15);
    }
  }
}

TEST(Operators, DiagonalsOnCircleAreMinusHalfH) {
  for (std::size_t n : {4, 10, 33}) {
    const GridPtr g = grid_of(make_circle(1.0), n);
    const ComplexMatrix K = assemble_K(*g, 1.3);
    const ComplexMatrix J = assemble_J(*g, 1.3);
    for (std::size_t i = 0; i < n; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      EXPECT_NEAR(K(ii, ii).real(), -0.5 / n, 1e-13);
      EXPECT_NEAR(J(ii, ii).real(), -0.5 / n, 1e-13);
      EXPECT_EQ(K(ii, ii).imag(), 0.0);
      EXPECT_EQ(J(ii, ii).imag(), 0.0);
    }
  }
}

TEST(Operators, DiagonalsAreRealAndWavenumberIndependent) {
  const GridPtr g = grid_of(make_benchmark_ellipse(), 16);
  const ComplexMatrix K1 = assemble_K(*g, 1.0), K5 = assemble_K(*g, 5.0);
  const ComplexMatrix J1 = assemble_J(*g, 1.0), J5 = assemble_J(*g, 5.0);
  for (Eigen::Index i = 0; i < 16; ++i) {
    EXPECT_EQ(K1(i, i), K5(i, i));
    EXPECT_EQ(J1(i, i), J5(i, i));
    EXPECT_EQ(K1(i, i).imag(), 0.0);
    EXPECT_EQ(J1(i, i).imag(), 0.0);
  }
}

TEST(Operators, CirculantOnCircle) {
  const GridPtr g = grid_of(make_circle(1.0), 12);
  const OperatorSet ops = assemble_all(g, 2.0);
  EXPECT_LE(circulant_defect(ops.V), 1e-12);
  EXPECT_LE(circulant_defect(ops.K), 1e-12);
  EXPECT_LE(circulant_defect(ops.J), 1e-12);
  EXPECT_LE(circulant_defect(ops.W), 1e-12);
}

TEST(Operators, AdjointDoubleLayerEpsReflection) {
  const std::size_t n = 10;
  const ComplexMatrix Jp = assemble_J(*grid_of(make_circle(1.0), n, 1.0 / 6), 1.5);
  const ComplexMatrix Jm = assemble_J(*grid_of(make_circle(1.0), n, -1.0 / 6), 1.5);
  const auto N = static_cast<Eigen::Index>(n);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < N; ++i) {
    for (Eigen::Index j = 0; j < N; ++j) {
      // Reflection i -> -i (mod N) combined with transposition.
      worst = std::max(worst, std::abs(Jm(i, j) - Jp((N - j) % N, (N - i) % N)));
    }
  }
  EXPECT_LE(worst, 1e-13);
}

TEST(Operators, HypersingularEntryAgainstFiveTerms) {
  const double k = 1.0;
  const GridPtr g = grid_of(make_circle(1.0), 4);
  const ComplexMatrix W = assemble_W(*g, k);
  const auto& be = g->companion().b;
  const auto& b = g->main().b;
  auto vt = [&](std::size_t i, std::size_t j) {
    return Complex(0.0, 0.25) * oracle_h0(k * distance(be[i], b[j]));
  };
  const Complex v00 = Complex(0.0, 0.25) * oracle_h0(k * distance(g->main().m[0], g->companion().m[0]));
  const Complex want = vt(1, 1) + vt(0, 0) - vt(1, 0) - vt(0, 1) -
                       k * k * dot(g->companion().n[0], g->main().n[0]) * v00;
  EXPECT_LE(std::abs(W(0, 0) - want), 1e-14);
}

TEST(Operators, BreakpointDifferenceRowSumsVanish) {
  for (const auto& curve : {make_circle(1.0), make_benchmark_ellipse()}) {
    const GridPtr g = grid_of(curve, 23, 0.3);
    const ComplexMatrix Vt = assemble_V_breakpoints(*g, 4.0);
    const ComplexMatrix D = breakpoint_difference(*g, Vt);
    EXPECT_LE(D.rowwise().sum().cwiseAbs().maxCoeff(), 1e-12 * Vt.cwiseAbs().maxCoeff());
  }
}

TEST(Operators, HypersingularIsLinearInBreakpointMatrix) {
  const GridPtr g = grid_of(make_benchmark_ellipse(), 14);
  const ComplexMatrix V1 = assemble_V(*g, 1.0), V2 = assemble_V(*g, 2.5);
  const ComplexMatrix Vt1 = assemble_V_breakpoints(*g, 1.0), Vt2 = assemble_V_breakpoints(*g, 2.5);
  const ComplexMatrix W1 = assemble_W(*g, 1.0), W2 = assemble_W(*g, 2.5);
  const auto n = static_cast<Eigen::Index>(g->size());
  ComplexMatrix k2term(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double nn = dot(g->companion().n[i], g->main().n[j]);
      k2term(i, j) = -nn * (1.0 * V1(j, i) - 6.25 * V2(j, i));
    }
  }
  const ComplexMatrix diff = W1 - W2 - k2term;
  EXPECT_LE((diff - breakpoint_difference(*g, Vt1 - Vt2)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Operators, AssembleAllMatchesIndividualAssemblies) {
  const GridPtr g = grid_of(make_benchmark_ellipse(), 20);
  const OperatorSet ops = assemble_all(g, 3.0);
  EXPECT_EQ(ops.V, assemble_V(*g, 3.0));
  EXPECT_EQ(ops.K, assemble_K(*g, 3.0));
  EXPECT_EQ(ops.J, assemble_J(*g, 3.0));
  EXPECT_LE((ops.W - assemble_W(*g, 3.0)).cwiseAbs().maxCoeff(), 0.0);
  const OperatorSet inner = assemble_all(g, 3.0 / (2.0 / 3.0));
  EXPECT_GT((ops.V - inner.V).norm(), 0.0);
  EXPECT_GT((ops.W - inner.W).norm(), 0.0);
}

TEST(Operators, RejectsBadWavenumber) {
  const GridPtr g = grid_of(make_circle(1.0), 8);
  EXPECT_THROW(assemble_V(*g, 0.0), InvalidInput);
  EXPECT_THROW(assemble_all(g, -1.0), InvalidInput);
  EXPECT_THROW(assemble_all(nullptr, 1.0), InvalidInput);
}

TEST(Operators, CoincidentNodesAbortWithDiagnostic) {
  const std::vector<ParametrizedCurve> twice{make_circle(1.0), make_circle(1.0)};
  const GridGeometry g = sample_grids(twice, 8);
  try {
    assemble_K(g, 1.0);
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("coincide"), std::string::npos);
  }
}

struct Residuals {
  double r1;
  double r2_over_h;
};

Residuals calderon_residuals(std::size_t n, NormalConvention convention) {
  const double k = 3.0;
  const GridPtr g = grid_of(make_benchmark_ellipse(), n);
  const OperatorSet ops = assemble_all(g, k, {convention});
  const Traces t = incident_traces(IncidentField::point_source({0.1, 0.2}, k), *g);
  const auto I = ComplexMatrix::Identity(ops.V.rows(), ops.V.cols());
  const ComplexVector r1 = (0.5 * I - ops.K) * t.beta0 + ops.V * t.beta1;
  const ComplexVector r2 = ops.W * t.beta0 + (0.5 * I + ops.J) * t.beta1;
  return {r1.cwiseAbs().maxCoeff(), double(n) * r2.cwiseAbs().maxCoeff()};
}

TEST(Operators, CalderonResidualsAreSecondOrder) {
  Residuals previous = calderon_residuals(80, NormalConvention::kernel);
  for (std::size_t n : {160, 320}) {
    const Residuals r = calderon_residuals(n, NormalConvention::kernel);
    const double q1 = previous.r1 / r.r1, q2 = previous.r2_over_h / r.r2_over_h;
    EXPECT_GE(q1, 3.4) << n;
    EXPECT_LE(q1, 4.6) << n;
    EXPECT_GE(q2, 3.4) << n;
    EXPECT_LE(q2, 4.6) << n;
    previous = r;
  }
}

TEST(Operators, SwappedNormalsBreakCalderonResiduals) {
  const Residuals a = calderon_residuals(80, NormalConvention::swapped);
  const Residuals b = calderon_residuals(160, NormalConvention::swapped);
  EXPECT_LT(a.r1 / b.r1, 2.0);
}

TEST(Operators, AssemblyTimingSmoke) {
  const GridPtr g = grid_of(make_benchmark_ellipse(), 640);
  const auto start = std::chrono::steady_clock::now();
  const OperatorSet ops = assemble_all(g, 3.0);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_EQ(ops.W.rows(), 640);
  EXPECT_LT(seconds, 10.0);
}

TEST(Operators, WriteMatrixFormat) {
  ComplexMatrix a(2, 2);
  a << Complex(1, -2), Complex(0.5, 0), Complex(0, 0.25), Complex(-3, 1e-20);
  std::ostringstream out;
  write_matrix(out, a);
  EXPECT_EQ(out.str(), "1,-2 0.5,0\n0,0.25 -3,9.9999999999999995e-21\n");
}

}  // namespace
