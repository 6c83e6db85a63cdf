#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "calderon/types.hpp"

namespace calderon {

/// A smooth closed curve given by a 1-periodic parametrization together with
/// its first and second derivatives. Derivatives must be analytic: they enter
/// the diagonals of the double-layer matrices directly.
class ParametrizedCurve {
 public:
  using PointFn = std::function<Vec2(double)>;

  ParametrizedCurve(std::string label, PointFn x, PointFn dx, PointFn ddx);

  Vec2 point(double t) const { return x_(t); }
  Vec2 tangent(double t) const { return dx_(t); }
  Vec2 second_derivative(double t) const { return ddx_(t); }
  /// Outward normal (x2', -x1') for a positively oriented curve; not normalised.
  Vec2 normal(double t) const {
    const Vec2 d = dx_(t);
    return {d.y, -d.x};
  }
  const std::string& label() const { return label_; }

 private:
  std::string label_;
  PointFn x_;
  PointFn dx_;
  PointFn ddx_;
};

/// Cosine/sine coefficients of each coordinate, indexed by mode m >= 0:
/// x(t) = sum_m x_cos[m] cos(2 pi m t) + x_sin[m] sin(2 pi m t), same for y.
struct FourierCoefficients {
  std::vector<double> x_cos, x_sin, y_cos, y_sin;
};

/// x(t) = center + r (cos 2 pi t, sin 2 pi t).
ParametrizedCurve make_circle(double radius, Vec2 center = {});
/// x(t) = center + (a cos 2 pi t, b sin 2 pi t).
ParametrizedCurve make_ellipse(double a, double b, Vec2 center);
/// The ellipse (x - 0.1)^2 / 4 + (y - 0.2)^2 = 1 used by the reference
/// transmission and combined-field experiments.
ParametrizedCurve make_benchmark_ellipse();
ParametrizedCurve make_fourier_curve(FourierCoefficients coeffs);

/// Reads a Fourier curve file: one line per mode m = 0, 1, ... holding
/// "x_cos x_sin y_cos y_sin"; blank lines and '#' comments are ignored.
FourierCoefficients read_fourier_file(const std::string& path);

/// Builds a curve from a textual description:
///   circle <r> [<cx> <cy>]
///   ellipse <a> <b> <cx> <cy>
///   benchmark_ellipse            (alias: paper_ellipse)
///   fourier <path>
/// Throws InvalidInput for unknown names or malformed parameters.
ParametrizedCurve builtin_curve(std::string_view description);

/// Several components separated by ';', e.g. "circle 1 -3 0; circle 1 3 0".
std::vector<ParametrizedCurve> parse_curves(std::string_view description);

/// Geometric samples of one uniform parameter grid.
struct GridSamples {
  std::vector<double> t;    ///< parameter of each node
  std::vector<Vec2> m;      ///< x(t_i)
  std::vector<Vec2> b;      ///< x(s_i), s_i = t_i - h/2
  std::vector<Vec2> n;      ///< h * normal(t_i)
  std::vector<double> ell;  ///< |n_i|
  std::vector<Vec2> s2;     ///< h^2 * x''(t_i)
};

struct SamplingOptions {
  /// eps = +-1/2 gives an unstable discretization of the single layer; it
  /// is accepted only when this is set.
  bool allow_unstable_eps = false;
};

inline constexpr double kDefaultEps = 1.0 / 6.0;

/// Main and companion grids over one or more curve components.
///
/// Node p of component c (local index q = p - offset(c)) sits at parameter
/// t = (q + 1) h_c on the main grid and t = (q + 1 + eps) h_c on the
/// companion grid, with h_c = 1 / N_c. Indices are 0-based and global across
/// components; next(p) walks each component as a cycle.
class GridGeometry {
 public:
  std::size_t size() const { return next_.size(); }
  double eps() const { return eps_; }
  const GridSamples& main() const { return main_; }
  const GridSamples& companion() const { return companion_; }

  std::size_t next(std::size_t p) const { return next_[p]; }
  std::span<const std::size_t> next_map() const { return next_; }
  /// Mesh size of the component owning node p.
  double h(std::size_t p) const { return h_[p]; }
  std::size_t component(std::size_t p) const { return component_[p]; }
  std::size_t component_count() const { return offsets_.size(); }
  std::size_t component_offset(std::size_t c) const { return offsets_[c]; }
  std::size_t component_size(std::size_t c) const { return sizes_[c]; }
  /// max_i ell_i over both grids, i.e. max h |x'| on the samples.
  double max_ell() const { return max_ell_; }

  friend GridGeometry sample_grids(std::span<const ParametrizedCurve> curves,
                                   std::span<const std::size_t> nodes_per_curve, double eps,
                                   SamplingOptions options);

 private:
  double eps_ = kDefaultEps;
  GridSamples main_;
  GridSamples companion_;
  std::vector<std::size_t> next_;
  std::vector<double> h_;
  std::vector<std::size_t> component_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> sizes_;
  double max_ell_ = 0.0;
};

/// Validates eps: rejects 0 and values outside (-1/2, 1/2); +-1/2 only with
/// options.allow_unstable_eps.
void validate_eps(double eps, SamplingOptions options = {});

/// Samples all components. Requires N_c >= 4 per component; checks
/// regularity, periodicity and positive orientation of each component and
/// throws GeometryError with a diagnostic otherwise.
GridGeometry sample_grids(std::span<const ParametrizedCurve> curves,
                          std::span<const std::size_t> nodes_per_curve, double eps,
                          SamplingOptions options = {});

/// Single component shorthand.
GridGeometry sample_grids(const ParametrizedCurve& curve, std::size_t nodes,
                          double eps = kDefaultEps, SamplingOptions options = {});

/// Same N on every component.
GridGeometry sample_grids(std::span<const ParametrizedCurve> curves, std::size_t nodes,
                          double eps = kDefaultEps, SamplingOptions options = {});

/// Shoelace area of the main-grid midpoints of component c.
double signed_area(const GridGeometry& grid, std::size_t component);

}  // namespace calderon
