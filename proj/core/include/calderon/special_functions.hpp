#pragma once

#include "calderon/types.hpp"

/// Bessel functions of integer order 0 and 1 for real arguments and the
/// Hankel functions of the first kind built from them.
///
/// Three evaluation branches cover the positive axis:
///   - x <= kSeriesLimit: ascending power series (Y with the log series);
///   - kSeriesLimit < x < kAsymptoticLimit: Miller backward recurrence for
///     J_n, normalised with J0 + 2 sum J_2k = 1, and Neumann series for Y0, Y1;
///   - x >= kAsymptoticLimit: Hankel's large-argument expansion.
/// Every branch accumulates in long double, which keeps the relative error
/// of the rounded double result near one ulp even close to the zeros.
namespace calderon::special {

inline constexpr double kSeriesLimit = 2.0;
inline constexpr double kAsymptoticLimit = 25.0;

struct BesselSet {
  double j0 = 0.0;
  double j1 = 0.0;
  double y0 = 0.0;
  double y1 = 0.0;
};

struct HankelPair {
  Complex h0;
  Complex h1;
};

double bessel_j0(double x);
double bessel_j1(double x);
/// Throws std::domain_error for x <= 0.
double bessel_y0(double x);
double bessel_y1(double x);

/// J0, J1, Y0, Y1 at one abscissa; x > 0.
BesselSet bessel_set(double x);

Complex hankel1_0(double x);
Complex hankel1_1(double x);
/// Both orders at once; the kernels of every operator need one or both.
HankelPair hankel1_01(double x);

namespace detail {
// Individual branches, exposed so tests can check continuity at the switch
// abscissae. Each is valid (and accurate) on a neighbourhood of its range.
BesselSet series_branch(double x);
BesselSet recurrence_branch(double x);
BesselSet asymptotic_branch(double x);
}  // namespace detail

}  // namespace calderon::special
