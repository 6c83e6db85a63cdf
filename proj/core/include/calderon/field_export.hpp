#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "calderon/solvers.hpp"

namespace calderon {

/// Rectangular lattice; x varies fastest. A dimension with one point sits at
/// its minimum.
struct Lattice {
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
  std::size_t nx = 1, ny = 1;
};

/// "xmin xmax ymin ymax nx ny" (commas also accepted).
Lattice parse_lattice(std::string_view text);
std::vector<Vec2> lattice_points(const Lattice& lattice);

enum class FieldRegion { exterior, interior };

/// Field exports keep the strict clearance of the potentials.
inline constexpr double kExportClearance = 10.0;

/// CSV "x,y,re,im" with a header line. Points closer to the boundary than the
/// clearance rule allows are written with empty re and im.
void export_field(std::ostream& out, const Solution& solution, const Lattice& lattice,
                  FieldRegion region = FieldRegion::exterior,
                  EvalOptions options = {kExportClearance});

/// Same, to a file. Throws IoError if it cannot be written.
void export_field(const std::string& path, const Solution& solution, const Lattice& lattice,
                  FieldRegion region = FieldRegion::exterior,
                  EvalOptions options = {kExportClearance});

}  // namespace calderon
