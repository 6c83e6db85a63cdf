#include "calderon/selftest.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include "calderon/operators.hpp"
#include "calderon/special_functions.hpp"

namespace calderon {
namespace {

struct Reference {
  double x, j0, j1, y0, y1;
};

// 30-digit values, rounded.
constexpr std::array<Reference, 12> kTable{{
    {1e-4, 9.99999997500000015e-01, 4.99999999375000026e-05, -5.93728906970933679e+00,
     -6.36619803645576121e+03},
    {0.01, 9.99975000156249516e-01, 4.99993750026041586e-03, -3.00545563708364583e+00,
     -6.36785962820606528e+01},
    {0.5, 9.38469807240812859e-01, 2.42268457674873899e-01, -4.44518733506706565e-01,
     -1.47147239267024310e+00},
    {1.0, 7.65197686557966605e-01, 4.40050585744933498e-01, 8.82569642156769557e-02,
     -7.81212821300288685e-01},
    {1.9, 2.81818559374385547e-01, 5.81157072713434086e-01, 4.96819971283820216e-01,
     -1.64405772331595312e-01},
    {2.1, 1.66606980331990284e-01, 5.68292135757038630e-01, 5.18293737513760733e-01,
     -5.16786121304235319e-02},
    {5.0, -1.77596771314338292e-01, -3.27579137591465230e-01, -3.08517625249033756e-01,
     1.47863143391226831e-01},
    {10.0, -2.45935764451348349e-01, 4.34727461688614383e-02, 5.56711672835993945e-02,
     2.49015424206953884e-01},
    {24.5, 2.36974337340679006e-02, -1.58978411819328092e-01, -1.59428717749750426e-01,
     -2.69546553318854125e-02},
    {25.5, 1.44062157546847869e-01, -6.20485364914841048e-02, -6.48597654987834865e-02,
     -1.45361058723049413e-01},
    {60.0, -9.14718040890618728e-02, 4.65983837581663146e-02, 4.73589522094493981e-02,
     9.18696093698668920e-02},
    {200.0, -1.54374399305650910e-02, -5.43045381823782231e-02, -5.42657752498179116e-02,
     1.53018245803899899e-02},
}};

double rel(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

bool is_circulant(const ComplexMatrix& m, double tol) {
  const Eigen::Index n = m.rows();
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (std::abs(m(i, j) - m(0, (j - i + n) % n)) > tol * scale) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<CheckResult> special_function_checks() {
  std::vector<CheckResult> out;

  double worst = 0.0;
  for (const auto& r : kTable) {
    const auto s = special::bessel_set(r.x);
    worst = std::max({worst, rel(s.j0, r.j0), rel(s.j1, r.j1), rel(s.y0, r.y0), rel(s.y1, r.y1)});
    const auto h = special::hankel1_01(r.x);
    worst = std::max(worst, std::abs(h.h0 - Complex(r.j0, r.y0)) / std::abs(Complex(r.j0, r.y0)));
    worst = std::max(worst, std::abs(h.h1 - Complex(r.j1, r.y1)) / std::abs(Complex(r.j1, r.y1)));
  }
  out.push_back({"bessel_reference_table", worst <= 1e-10, "max relative error " + sci(worst)});

  double wronskian = 0.0;
  const int samples = 2000;
  for (int i = 0; i < samples; ++i) {
    const double x = 1e-4 * std::pow(2e6, static_cast<double>(i) / (samples - 1));
    const auto s = special::bessel_set(x);
    const double exact = 2.0 / (kPi * x);
    wronskian = std::max(wronskian, std::fabs(s.j1 * s.y0 - s.j0 * s.y1 - exact) / exact);
  }
  out.push_back({"wronskian", wronskian <= 1e-9, "max relative residual " + sci(wronskian)});
  return out;
}

std::vector<CheckResult> hand_check_fixtures() {
  std::vector<CheckResult> out;
  const auto grid = std::make_shared<const GridGeometry>(sample_grids(make_circle(1.0), 4, 1.0 / 6.0));
  const double k = 1.0;
  const OperatorSet ops = assemble_all(grid, k);

  double ell_dev = 0.0;
  for (std::size_t i = 0; i < grid->size(); ++i) {
    ell_dev = std::max({ell_dev, std::fabs(grid->main().ell[i] - kPi / 2),
                        std::fabs(grid->companion().ell[i] - kPi / 2)});
  }
  out.push_back({"circle4_ell", ell_dev <= 1e-14, "max |ell - pi/2| " + sci(ell_dev)});

  double diag_dev = 0.0;
  for (Eigen::Index i = 0; i < 4; ++i) {
    diag_dev = std::max({diag_dev, std::abs(ops.K(i, i) + 0.125), std::abs(ops.J(i, i) + 0.125)});
  }
  out.push_back({"circle4_double_layer_diagonal", diag_dev <= 1e-13,
                 "max |K_ii + 1/8|, |J_ii + 1/8| " + sci(diag_dev)});

  const ComplexMatrix vt = assemble_V_breakpoints(*grid, k);
  const ComplexMatrix fd = breakpoint_difference(*grid, vt);
  const double row_sum = fd.rowwise().sum().cwiseAbs().maxCoeff();
  const double bound = 1e-12 * vt.cwiseAbs().maxCoeff();
  out.push_back({"circle4_W_row_sums", row_sum <= bound,
                 "max |row sum| " + sci(row_sum) + " (bound " + sci(bound) + ")"});

  const bool circulant = is_circulant(ops.V, 1e-12) && is_circulant(ops.K, 1e-12) &&
                         is_circulant(ops.J, 1e-12) && is_circulant(ops.W, 1e-12);
  out.push_back({"circle4_circulant", circulant, circulant ? "V, K, J, W circulant" : "not circulant"});
  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

}  // namespace calderon
