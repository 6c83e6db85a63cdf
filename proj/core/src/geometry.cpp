#include "calderon/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace calderon {
namespace {

constexpr double kTwoPi = 2.0 * kPi;

std::vector<double> parse_numbers(std::istringstream& in, std::string_view what) {
  std::vector<double> values;
  std::string token;
  while (in >> token) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw InvalidInput("curve '" + std::string(what) + "': bad number '" + token + "'");
    }
  }
  return values;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

void sample_one(const ParametrizedCurve& curve, double h, double shift, std::size_t count,
                GridSamples& out) {
  for (std::size_t q = 0; q < count; ++q) {
    const double t = (static_cast<double>(q) + 1.0 + shift) * h;
    const double s = t - 0.5 * h;
    const Vec2 normal = curve.normal(t);
    const Vec2 n = h * normal;
    out.t.push_back(t);
    out.m.push_back(curve.point(t));
    out.b.push_back(curve.point(s));
    out.n.push_back(n);
    out.ell.push_back(norm(n));
    out.s2.push_back((h * h) * curve.second_derivative(t));
  }
}

ParametrizedCurve ellipse_curve(std::string label, double a, double b, Vec2 center) {
  if (!(a > 0.0) || !(b > 0.0)) throw InvalidInput("ellipse semi-axes must be positive");
  return ParametrizedCurve(
      std::move(label),
      [=](double t) {
        return Vec2{center.x + a * std::cos(kTwoPi * t), center.y + b * std::sin(kTwoPi * t)};
      },
      [=](double t) {
        return Vec2{-kTwoPi * a * std::sin(kTwoPi * t), kTwoPi * b * std::cos(kTwoPi * t)};
      },
      [=](double t) {
        const double w2 = kTwoPi * kTwoPi;
        return Vec2{-w2 * a * std::cos(kTwoPi * t), -w2 * b * std::sin(kTwoPi * t)};
      });
}

}  // namespace

ParametrizedCurve::ParametrizedCurve(std::string label, PointFn x, PointFn dx, PointFn ddx)
    : label_(std::move(label)), x_(std::move(x)), dx_(std::move(dx)), ddx_(std::move(ddx)) {
  if (!x_ || !dx_ || !ddx_) {
    throw InvalidInput("curve '" + label_ + "' needs x, x' and x''");
  }
}

ParametrizedCurve make_ellipse(double a, double b, Vec2 center) {
  std::ostringstream label;
  label << "ellipse " << a << ' ' << b << ' ' << center.x << ' ' << center.y;
  return ellipse_curve(label.str(), a, b, center);
}

ParametrizedCurve make_circle(double radius, Vec2 center) {
  if (!(radius > 0.0)) throw InvalidInput("circle radius must be positive");
  std::ostringstream label;
  label << "circle " << radius << ' ' << center.x << ' ' << center.y;
  return ellipse_curve(label.str(), radius, radius, center);
}

ParametrizedCurve make_benchmark_ellipse() {
  return ellipse_curve("benchmark_ellipse", 2.0, 1.0, {0.1, 0.2});
}

ParametrizedCurve make_fourier_curve(FourierCoefficients c) {
  const std::size_t modes =
      std::max({c.x_cos.size(), c.x_sin.size(), c.y_cos.size(), c.y_sin.size()});
  if (modes == 0) throw InvalidInput("fourier curve has no coefficients");
  c.x_cos.resize(modes, 0.0);
  c.x_sin.resize(modes, 0.0);
  c.y_cos.resize(modes, 0.0);
  c.y_sin.resize(modes, 0.0);

  // a cos(wt) + b sin(wt) and its first two derivatives.
  auto evaluate = [c, modes](double t, int order) {
    Vec2 out;
    for (std::size_t m = 0; m < modes; ++m) {
      const double w = kTwoPi * static_cast<double>(m);
      const double cs = std::cos(w * t);
      const double sn = std::sin(w * t);
      auto term = [&](double a, double b) {
        switch (order) {
          case 0: return a * cs + b * sn;
          case 1: return w * (b * cs - a * sn);
          default: return -w * w * (a * cs + b * sn);
        }
      };
      out.x += term(c.x_cos[m], c.x_sin[m]);
      out.y += term(c.y_cos[m], c.y_sin[m]);
    }
    return out;
  };
  return ParametrizedCurve(
      "fourier", [evaluate](double t) { return evaluate(t, 0); },
      [evaluate](double t) { return evaluate(t, 1); },
      [evaluate](double t) { return evaluate(t, 2); });
}

FourierCoefficients read_fourier_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open fourier curve file '" + path + "'");
  FourierCoefficients c;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    std::istringstream fields(line);
    const auto v = parse_numbers(fields, path);
    if (v.size() != 4) {
      throw InvalidInput(path + ":" + std::to_string(line_no) +
                         ": expected 'x_cos x_sin y_cos y_sin'");
    }
    c.x_cos.push_back(v[0]);
    c.x_sin.push_back(v[1]);
    c.y_cos.push_back(v[2]);
    c.y_sin.push_back(v[3]);
  }
  return c;
}

ParametrizedCurve builtin_curve(std::string_view description) {
  const std::string text = trim(description);
  std::istringstream in(text);
  std::string name;
  in >> name;
  if (name == "fourier") {
    std::string path;
    if (!(in >> path)) throw InvalidInput("fourier curve needs a coefficient file path");
    return make_fourier_curve(read_fourier_file(path));
  }
  const auto p = parse_numbers(in, text);
  if (name == "circle") {
    if (p.size() == 1) return make_circle(p[0]);
    if (p.size() == 3) return make_circle(p[0], {p[1], p[2]});
    throw InvalidInput("usage: circle <r> [<cx> <cy>]");
  }
  if (name == "ellipse") {
    if (p.size() != 4) throw InvalidInput("usage: ellipse <a> <b> <cx> <cy>");
    return make_ellipse(p[0], p[1], {p[2], p[3]});
  }
  if (name == "benchmark_ellipse" || name == "paper_ellipse") {
    if (!p.empty()) throw InvalidInput(name + " takes no parameters");
    return make_benchmark_ellipse();
  }
  throw InvalidInput("unknown curve '" + name + "'");
}

std::vector<ParametrizedCurve> parse_curves(std::string_view description) {
  std::vector<ParametrizedCurve> curves;
  std::size_t start = 0;
  while (start <= description.size()) {
    const auto stop = description.find(';', start);
    const auto piece = description.substr(start, stop == std::string_view::npos
                                                     ? std::string_view::npos
                                                     : stop - start);
    if (!trim(piece).empty()) curves.push_back(builtin_curve(piece));
    if (stop == std::string_view::npos) break;
    start = stop + 1;
  }
  if (curves.empty()) throw InvalidInput("empty curve description");
  return curves;
}

void validate_eps(double eps, SamplingOptions options) {
  if (!std::isfinite(eps)) throw GeometryError("eps must be finite");
  if (eps == 0.0) {
    throw GeometryError("eps = 0 makes both grids coincide; the singular kernels would be "
                        "evaluated on their diagonal");
  }
  const double a = std::fabs(eps);
  if (a > 0.5) throw GeometryError("eps must lie in (-1/2, 1/2)");
  if (a == 0.5 && !options.allow_unstable_eps) {
    throw GeometryError("eps = +-1/2 gives an unstable single-layer discretization; pass the "
                        "unstable override to use it anyway");
  }
}

double signed_area(const GridGeometry& grid, std::size_t component) {
  const std::size_t off = grid.component_offset(component);
  const std::size_t count = grid.component_size(component);
  const auto& m = grid.main().m;
  double twice = 0.0;
  for (std::size_t q = 0; q < count; ++q) {
    const Vec2 a = m[off + q];
    const Vec2 b = m[off + (q + 1) % count];
    twice += a.x * b.y - b.x * a.y;
  }
  return 0.5 * twice;
}

GridGeometry sample_grids(std::span<const ParametrizedCurve> curves,
                          std::span<const std::size_t> nodes_per_curve, double eps,
                          SamplingOptions options) {
  if (curves.empty()) throw GeometryError("no curve components given");
  if (curves.size() != nodes_per_curve.size()) {
    throw GeometryError("one node count per curve component is required");
  }
  validate_eps(eps, options);

  GridGeometry g;
  g.eps_ = eps;
  std::size_t offset = 0;
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const std::size_t count = nodes_per_curve[c];
    if (count < 4) {
      throw GeometryError("component " + std::to_string(c) + ": need at least 4 nodes, got " +
                          std::to_string(count));
    }
    const double h = 1.0 / static_cast<double>(count);
    sample_one(curves[c], h, 0.0, count, g.main_);
    sample_one(curves[c], h, eps, count, g.companion_);
    g.offsets_.push_back(offset);
    g.sizes_.push_back(count);
    for (std::size_t q = 0; q < count; ++q) {
      g.next_.push_back(offset + (q + 1) % count);
      g.h_.push_back(h);
      g.component_.push_back(c);
    }

    const ParametrizedCurve& curve = curves[c];
    double scale = 0.0;
    for (std::size_t q = 0; q < count; ++q) scale = std::max(scale, norm(g.main_.m[offset + q]));
    for (std::size_t q = 0; q < count; ++q) {
      const std::size_t p = offset + q;
      if (!(g.main_.ell[p] > 0.0) || !(g.companion_.ell[p] > 0.0)) {
        throw GeometryError("curve '" + curve.label() + "' is not regular near t = " +
                            std::to_string(g.main_.t[p]));
      }
      const Vec2 wrap = curve.point(g.main_.t[p] + 1.0) - g.main_.m[p];
      if (norm(wrap) > 1e-10 * (1.0 + scale)) {
        throw GeometryError("curve '" + curve.label() + "' is not 1-periodic at t = " +
                            std::to_string(g.main_.t[p]));
      }
    }
    offset += count;
  }

  for (std::size_t c = 0; c < curves.size(); ++c) {
    const double area = signed_area(g, c);
    if (!(area > 0.0)) {
      throw GeometryError("curve '" + curves[c].label() +
                          "' is not positively oriented (signed area " + std::to_string(area) +
                          "); reverse its parametrization");
    }
  }
  const auto& me = g.main_.ell;
  const auto& ce = g.companion_.ell;
  g.max_ell_ = std::max(*std::max_element(me.begin(), me.end()),
                        *std::max_element(ce.begin(), ce.end()));
  return g;
}

GridGeometry sample_grids(const ParametrizedCurve& curve, std::size_t nodes, double eps,
                          SamplingOptions options) {
  const std::size_t counts[] = {nodes};
  return sample_grids(std::span<const ParametrizedCurve>(&curve, 1), counts, eps, options);
}

GridGeometry sample_grids(std::span<const ParametrizedCurve> curves, std::size_t nodes,
                          double eps, SamplingOptions options) {
  const std::vector<std::size_t> counts(curves.size(), nodes);
  return sample_grids(curves, counts, eps, options);
}

}  // namespace calderon
