// calderon: command-line front end for the staggered-grid Helmholtz solvers.
//
//   calderon convergence --method transmission --k 3 --c 0.6666666667 --alpha 1.5
//   calderon solve --method dD01 --N 160 --out json
//   calderon field --method iD01 --N 160 --lattice "-4 4 -3 3 81 61" --output u.csv
//   calderon selftest
//
// Exit codes: 0 ok, 2 usage or invalid input, 3 numerical failure, 4 I/O.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "calderon/field_export.hpp"
#include "calderon/report.hpp"
#include "calderon/selftest.hpp"
#include "calderon/study.hpp"

namespace {

using namespace calderon;

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

// Options shared by solve, convergence and field. Strings are kept raw and
// funnelled through the same key/value path as config files, so both inputs
// are validated by one parser.
struct SharedOptions {
  std::string config_file;
  std::optional<std::string> curve, k, eps, n, method, coupling, c, alpha, out, source,
      direction, observation, clearance, bm_scaling;
  bool no_meta = false;

  void attach(CLI::App& app) {
    app.add_option("--config", config_file, "key = value settings file; flags override it");
    app.add_option("--curve", curve, "circle r [cx cy] | ellipse a b cx cy | benchmark_ellipse | "
                                     "fourier <file>; ';' separates components");
    app.add_option("--k", k, "exterior wavenumber");
    app.add_option("--eps", eps, "companion-grid offset, default 1/6");
    app.add_option("--N", n, "nodes per component, or a ladder like 10,20,40");
    app.add_option("--method", method,
                   "dD01 dD02 dN01 dN02 iD01 iD02 iN01 iN02 transmission burton_miller");
    app.add_option("--coupling", coupling, "Burton-Miller coupling, e.g. -2i (default -ik)");
    app.add_option("--c", c, "transmission: interior wavenumber is k/c");
    app.add_option("--alpha", alpha, "transmission: flux ratio");
    app.add_option("--out", out, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--source", source, "point source of the exterior solution, 'x y'");
    app.add_option("--direction", direction, "plane-wave direction, 'x y'");
    app.add_option("--observation", observation, "observation points, 'x y; x y'");
    app.add_option("--clearance", clearance, "observation clearance in units of max ell");
    app.add_option("--bm-scaling", bm_scaling, "as_printed or h_scaled")
        ->check(CLI::IsMember({"as_printed", "h_scaled"}));
    app.add_flag("--no-meta", no_meta, "omit metadata (config echo, timing) from output");
  }

  StudyConfig build() const {
    StudyConfig config;
    ConfigEntries entries;
    if (!config_file.empty()) entries = read_config_file(config_file);
    auto put = [&](const char* key, const std::optional<std::string>& v) {
      if (v) entries.emplace_back(key, *v);
    };
    put("curve", curve);
    put("k", k);
    put("eps", eps);
    put("N", n);
    put("method", method);
    put("coupling", coupling);
    put("c", c);
    put("alpha", alpha);
    put("out", out);
    put("source", source);
    put("direction", direction);
    put("observation", observation);
    put("clearance_factor", clearance);
    put("bm_scaling", bm_scaling);
    config.apply(entries);
    if (no_meta) config.metadata = false;
    config.validate();
    return config;
  }
};

std::size_t single_n(const StudyConfig& config, const char* command) {
  if (config.ladder.size() != 1) {
    throw InvalidInput(std::string(command) + " needs a single N, e.g. --N 160");
  }
  return config.ladder.front();
}

// Errors of one level, solving at 2N too when the density column needs it.
std::vector<double> errors_for(const StudyConfig& config, const Solution& s) {
  if (!is_indirect(s.method)) return level_errors(config, s);
  const std::size_t n = s.grid->size();
  const Solution finer = solve_level(config, 2 * n);
  return level_errors(config, s, &finer);
}

void print_solution(std::ostream& out, const StudyConfig& config, const Solution& s) {
  const auto names = metric_names(s.method);
  const auto errors = errors_for(config, s);
  const GridGeometry& g = *s.grid;

  if (config.format == OutputFormat::json) {
    nlohmann::ordered_json doc;
    doc["method"] = std::string(to_string(s.method));
    doc["N"] = g.size();
    for (std::size_t i = 0; i < names.size(); ++i) doc["errors"][names[i]] = errors[i];
    doc["diagnostics"]["rcond"] = s.diagnostics.rcond;
    doc["diagnostics"]["warning"] =
        s.diagnostics.warning ? nlohmann::ordered_json(*s.diagnostics.warning) : nullptr;
    if (config.metadata) {
      for (const auto& [key, value] : config.echo()) doc["metadata"]["config"][key] = value;
    }
    auto& nodes = doc["nodes"] = nlohmann::ordered_json::array();
    for (std::size_t j = 0; j < g.size(); ++j) {
      const auto jj = static_cast<Eigen::Index>(j);
      nlohmann::ordered_json node;
      node["j"] = j;
      node["t"] = g.main().t[j];
      node["t_eps"] = g.companion().t[j];
      if (s.trace) node["phi"] = {s.trace->coeffs()[jj].real(), s.trace->coeffs()[jj].imag()};
      if (s.flux) node["lambda"] = {s.flux->coeffs()[jj].real(), s.flux->coeffs()[jj].imag()};
      nodes.push_back(std::move(node));
    }
    out << doc.dump(2) << '\n';
    return;
  }

  if (config.metadata) {
    for (const auto& [key, value] : config.echo()) out << "# " << key << ": " << value << '\n';
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4e", errors[i]);
    out << "# " << names[i] << ": " << buf << '\n';
  }
  if (s.diagnostics.warning) out << "# warning: " << *s.diagnostics.warning << '\n';
  // phi: dipole density on the main grid; lambda: charge coefficients
  // (h-scaled) on the companion grid.
  out << "j,t,phi_re,phi_im,t_eps,lambda_re,lambda_im\n";
  for (std::size_t j = 0; j < g.size(); ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    char buf[256];
    std::string phi = ",", lambda = ",";
    if (s.trace) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g", s.trace->coeffs()[jj].real(),
                    s.trace->coeffs()[jj].imag());
      phi = buf;
    }
    if (s.flux) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g", s.flux->coeffs()[jj].real(),
                    s.flux->coeffs()[jj].imag());
      lambda = buf;
    }
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%s,%.17g,%s", j, g.main().t[j], phi.c_str(),
                  g.companion().t[j], lambda.c_str());
    out << buf << '\n';
  }
}

int run_selftest() {
  auto results = special_function_checks();
  const auto fixtures = hand_check_fixtures();
  results.insert(results.end(), fixtures.begin(), fixtures.end());
  for (const auto& r : results) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
  }
  return all_passed(results) ? 0 : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Staggered-grid boundary element solvers for the 2D Helmholtz equation"};
  app.require_subcommand(1);

  SharedOptions solve_opts, conv_opts, field_opts;
  auto* solve_cmd = app.add_subcommand("solve", "solve at one N and print the densities");
  solve_opts.attach(*solve_cmd);
  auto* conv_cmd = app.add_subcommand("convergence", "error table with e.c.r. over an N ladder");
  conv_opts.attach(*conv_cmd);
  auto* field_cmd = app.add_subcommand("field", "export the discrete field on a lattice as CSV");
  field_opts.attach(*field_cmd);
  std::string lattice_text, region_text = "exterior", output_path;
  field_cmd->add_option("--lattice", lattice_text, "'xmin xmax ymin ymax nx ny'")->required();
  field_cmd->add_option("--region", region_text, "exterior or interior (transmission only)")
      ->check(CLI::IsMember({"exterior", "interior"}));
  field_cmd->add_option("--output", output_path, "output file (default stdout)");
  auto* self_cmd = app.add_subcommand("selftest", "special-function accuracy and N = 4 fixtures");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*self_cmd) return run_selftest();

    if (*conv_cmd) {
      const StudyConfig config = conv_opts.build();
      const ConvergenceReport report = run_study(config);
      write_report(std::cout, report, config.format, config.metadata);
      for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
      return 0;
    }

    if (*solve_cmd) {
      const StudyConfig config = solve_opts.build();
      const Solution s = solve_level(config, single_n(config, "solve"));
      print_solution(std::cout, config, s);
      if (s.diagnostics.warning) std::cerr << "warning: " << *s.diagnostics.warning << '\n';
      return 0;
    }

    if (*field_cmd) {
      const StudyConfig config = field_opts.build();
      const Lattice lattice = parse_lattice(lattice_text);
      const Solution s = solve_level(config, single_n(config, "field"));
      const FieldRegion region =
          region_text == "interior" ? FieldRegion::interior : FieldRegion::exterior;
      if (output_path.empty()) {
        export_field(std::cout, s, lattice, region);
      } else {
        export_field(output_path, s, lattice, region);
      }
      return 0;
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  }
  return kExitUsage;
}
