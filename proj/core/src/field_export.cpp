#include "calderon/field_export.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "calderon/config.hpp"

namespace calderon {

Lattice parse_lattice(std::string_view text) {
  std::string s(text);
  for (char& ch : s) {
    if (ch == ',') ch = ' ';
  }
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while ((pos = s.find_first_not_of(" \t", pos)) != std::string::npos) {
    const auto end = s.find_first_of(" \t", pos);
    parts.push_back(s.substr(pos, end == std::string::npos ? end : end - pos));
    pos = end;
  }
  if (parts.size() != 6) throw InvalidInput("lattice needs 'xmin xmax ymin ymax nx ny'");
  Lattice l;
  l.xmin = parse_real(parts[0], "xmin");
  l.xmax = parse_real(parts[1], "xmax");
  l.ymin = parse_real(parts[2], "ymin");
  l.ymax = parse_real(parts[3], "ymax");
  const auto ladder = parse_ladder(parts[4] + " " + parts[5]);
  l.nx = ladder[0];
  l.ny = ladder[1];
  if (l.nx < 1 || l.ny < 1) throw InvalidInput("lattice needs nx, ny >= 1");
  if (!(l.xmax >= l.xmin) || !(l.ymax >= l.ymin)) throw InvalidInput("lattice bounds reversed");
  return l;
}

std::vector<Vec2> lattice_points(const Lattice& l) {
  std::vector<Vec2> out;
  out.reserve(l.nx * l.ny);
  auto coord = [](double lo, double hi, std::size_t n, std::size_t i) {
    return n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  };
  for (std::size_t iy = 0; iy < l.ny; ++iy) {
    for (std::size_t ix = 0; ix < l.nx; ++ix) {
      out.push_back({coord(l.xmin, l.xmax, l.nx, ix), coord(l.ymin, l.ymax, l.ny, iy)});
    }
  }
  return out;
}

void export_field(std::ostream& out, const Solution& solution, const Lattice& lattice,
                  FieldRegion region, EvalOptions options) {
  if (region == FieldRegion::interior && !solution.interior_field) {
    throw InvalidInput(std::string(to_string(solution.method)) + " has no interior field");
  }
  const auto points = lattice_points(lattice);
  std::vector<std::string> lines(points.size());
  const auto count = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t p = 0; p < count; ++p) {
    const Vec2 z = points[static_cast<std::size_t>(p)];
    char buf[128];
    if (!has_clearance(*solution.grid, z, options)) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,,", z.x, z.y);
    } else {
      const Complex v = region == FieldRegion::interior ? solution.interior(z, options)
                                                        : solution.exterior(z, options);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g", z.x, z.y, v.real(), v.imag());
    }
    lines[static_cast<std::size_t>(p)] = buf;
  }
  out << "x,y,re,im\n";
  for (const auto& line : lines) out << line << '\n';
  if (!out) throw IoError("failed to write field export");
}

void export_field(const std::string& path, const Solution& solution, const Lattice& lattice,
                  FieldRegion region, EvalOptions options) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  export_field(out, solution, lattice, region, options);
}

}  // namespace calderon
