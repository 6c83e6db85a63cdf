#include "calderon/special_functions.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace calderon::special {
namespace {

using Real = long double;

constexpr Real kPiL = 3.14159265358979323846264338327950288L;
constexpr Real kEulerGamma = 0.57721566490153286060651209008240243L;
constexpr Real kInvSqrt2 = 0.70710678118654752440084436210484904L;
constexpr Real kTiny = 1e-22L;

void require_positive(double x, const char* name) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error(std::string(name) + ": argument must be a finite positive real, got " +
                            std::to_string(x));
  }
}

BesselSet to_double(Real j0, Real j1, Real y0, Real y1) {
  return {static_cast<double>(j0), static_cast<double>(j1), static_cast<double>(y0),
          static_cast<double>(y1)};
}

// Hankel's expansion P, Q for order nu (0 or 1).
void asymptotic_pq(int nu, Real x, Real& p, Real& q) {
  const Real mu = 4.0L * nu * nu;
  const Real eight_x = 8.0L * x;
  p = 1.0L;
  q = 0.0L;
  Real term = 1.0L;
  Real last = 1.0L;
  for (int k = 1; k < 200; ++k) {
    const Real odd = static_cast<Real>(2 * k - 1);
    term *= (mu - odd * odd) / (static_cast<Real>(k) * eight_x);
    const Real mag = std::fabs(term);
    if (mag > last) break;  // divergent tail of the asymptotic series
    // Signs alternate in pairs: +t1 (Q), -t2 (P), -t3 (Q), +t4 (P), ...
    const int pair = (k - 1) / 2;
    const Real sign = (pair % 2 == 0) ? 1.0L : -1.0L;
    if (k % 2 == 1) {
      q += sign * term;
    } else {
      p -= sign * term;
    }
    if (mag < kTiny) break;
    last = mag;
  }
}

}  // namespace

namespace detail {

BesselSet series_branch(double xd) {
  const Real x = xd;
  const Real half = x / 2.0L;
  const Real q = half * half;

  // J0 and the harmonic-number sum for Y0 share the term q^k / (k!)^2.
  Real j0 = 1.0L;
  Real y0_sum = 0.0L;
  {
    Real term = 1.0L;
    Real harmonic = 0.0L;
    for (int k = 1; k < 100; ++k) {
      term *= -q / (static_cast<Real>(k) * k);
      harmonic += 1.0L / k;
      j0 += term;
      y0_sum -= harmonic * term;  // (-1)^(k+1) H_k q^k / (k!)^2
      if (std::fabs(term) * (1.0L + harmonic) < kTiny * std::fabs(j0) + 1e-40L) break;
    }
  }

  // J1 and the digamma sum for Y1 share (-q)^k / (k! (k+1)!).
  Real j1_sum = 1.0L;
  Real y1_sum = 0.0L;
  {
    Real term = 1.0L;
    Real psi_k1 = -kEulerGamma;       // psi(k+1)
    Real psi_k2 = 1.0L - kEulerGamma;  // psi(k+2)
    y1_sum = psi_k1 + psi_k2;
    for (int k = 1; k < 100; ++k) {
      term *= -q / (static_cast<Real>(k) * (k + 1));
      psi_k1 += 1.0L / k;
      psi_k2 += 1.0L / (k + 1);
      j1_sum += term;
      y1_sum += (psi_k1 + psi_k2) * term;
      if (std::fabs(term) * (1.0L + psi_k2) < kTiny * std::fabs(j1_sum) + 1e-40L) break;
    }
  }
  const Real j1 = half * j1_sum;

  if (!(xd > 0.0)) {
    return to_double(j0, j1, 0.0L, 0.0L);
  }
  const Real log_half = std::log(half);
  const Real y0 = (2.0L / kPiL) * ((log_half + kEulerGamma) * j0 + y0_sum);
  const Real y1 = -2.0L / (kPiL * x) + (2.0L / kPiL) * log_half * j1 - half / kPiL * y1_sum;
  return to_double(j0, j1, y0, y1);
}

BesselSet recurrence_branch(double xd) {
  const Real x = xd;
  // Start index well beyond the turning point n = x so that J_start is
  // negligible at long double precision.
  int start = static_cast<int>(x + 16.0L + 10.0L * std::cbrt(x));
  if (start % 2 != 0) ++start;

  const Real two_over_x = 2.0L / x;
  Real f_next = 0.0L;    // f_{n+1}
  Real f_curr = 1e-30L;  // f_n
  Real even_sum = 0.0L;  // sum of f_{2k}, k >= 1
  Real y0_sum = 0.0L;    // sum (-1)^k f_{2k} / k
  Real y1_sum = 0.0L;    // sum (-1)^k (f_{2k-1} - f_{2k+1}) / k
  Real f_odd_above = 0.0L;  // f_{2k+1} for the pending y1 term
  // Walk down from n = start to n = 1, producing f_{n-1}.
  for (int n = start; n >= 1; --n) {
    const Real f_prev = static_cast<Real>(n) * two_over_x * f_curr - f_next;
    f_next = f_curr;
    f_curr = f_prev;
    const int m = n - 1;  // index of f_curr
    if (m >= 2 && m % 2 == 0) {
      const int k = m / 2;
      const Real sign = (k % 2 == 0) ? 1.0L : -1.0L;
      even_sum += f_curr;
      y0_sum += sign * f_curr / k;
      // f_next is f_{2k+1}; the matching f_{2k-1} arrives one step later.
      f_odd_above = f_next;
    } else if (m >= 1 && m % 2 == 1) {
      const int k = (m + 1) / 2;  // f_curr = f_{2k-1}
      if (k >= 1 && m + 2 <= start) {
        const Real sign = (k % 2 == 0) ? 1.0L : -1.0L;
        y1_sum += sign * (f_curr - f_odd_above) / k;
      }
    }
  }
  // f_curr = f_0, f_next = f_1.
  const Real norm = f_curr + 2.0L * even_sum;
  const Real j0 = f_curr / norm;
  const Real j1 = f_next / norm;
  const Real log_term = std::log(x / 2.0L) + kEulerGamma;
  const Real y0 = (2.0L / kPiL) * log_term * j0 - (4.0L / kPiL) * (y0_sum / norm);
  const Real y1 = (2.0L / kPiL) * (log_term * j1 - j0 / x) + (2.0L / kPiL) * (y1_sum / norm);
  return to_double(j0, j1, y0, y1);
}

BesselSet asymptotic_branch(double xd) {
  const Real x = xd;
  Real p0, q0, p1, q1;
  asymptotic_pq(0, x, p0, q0);
  asymptotic_pq(1, x, p1, q1);
  // Phases x - pi/4 and x - 3pi/4 expanded through cos x, sin x so that the
  // argument reduction happens on the exactly representable x.
  const Real c = std::cos(x);
  const Real s = std::sin(x);
  const Real cos0 = (c + s) * kInvSqrt2;
  const Real sin0 = (s - c) * kInvSqrt2;
  const Real cos1 = (s - c) * kInvSqrt2;
  const Real sin1 = -(s + c) * kInvSqrt2;
  const Real amp = std::sqrt(2.0L / (kPiL * x));
  return to_double(amp * (p0 * cos0 - q0 * sin0), amp * (p1 * cos1 - q1 * sin1),
                   amp * (p0 * sin0 + q0 * cos0), amp * (p1 * sin1 + q1 * cos1));
}

}  // namespace detail

BesselSet bessel_set(double x) {
  require_positive(x, "bessel_set");
  if (x <= kSeriesLimit) return detail::series_branch(x);
  if (x < kAsymptoticLimit) return detail::recurrence_branch(x);
  return detail::asymptotic_branch(x);
}

namespace {

// J-only evaluation for arbitrary real x via parity.
BesselSet j_only(double x, const char* name) {
  if (std::isnan(x)) throw std::domain_error(std::string(name) + ": NaN argument");
  const double ax = std::fabs(x);
  if (ax == 0.0) return {1.0, 0.0, 0.0, 0.0};
  if (std::isinf(ax)) return {0.0, 0.0, 0.0, 0.0};
  return bessel_set(ax);
}

}  // namespace

double bessel_j0(double x) { return j_only(x, "bessel_j0").j0; }

double bessel_j1(double x) {
  const double v = j_only(x, "bessel_j1").j1;
  return x < 0.0 ? -v : v;
}

double bessel_y0(double x) {
  require_positive(x, "bessel_y0");
  return bessel_set(x).y0;
}

double bessel_y1(double x) {
  require_positive(x, "bessel_y1");
  return bessel_set(x).y1;
}

HankelPair hankel1_01(double x) {
  require_positive(x, "hankel1");
  const BesselSet b = bessel_set(x);
  return {{b.j0, b.y0}, {b.j1, b.y1}};
}

Complex hankel1_0(double x) { return hankel1_01(x).h0; }
Complex hankel1_1(double x) { return hankel1_01(x).h1; }

}  // namespace calderon::special
