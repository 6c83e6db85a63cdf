#include "calderon/report.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace calderon {
namespace {

std::string format(const char* spec, double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

void write_csv(std::ostream& out, const ConvergenceReport& report, bool metadata) {
  if (metadata) {
    for (const auto& [key, value] : report.config) out << "# " << key << ": " << value << '\n';
    out << "# columns:";
    for (std::size_t c = 0; c < report.columns.size(); ++c) {
      out << (c ? ", " : " ") << "error_" << c + 1 << "=" << report.columns[c];
    }
    out << '\n';
    out << "# special_functions: " << (report.special_functions_ok ? "ok" : "FAILED") << " ("
        << report.special_functions_detail << ")\n";
    out << "# wall_seconds: " << format("%.3f", report.wall_seconds) << '\n';
  }
  for (const auto& w : report.warnings) out << "# warning: " << w << '\n';

  out << 'N';
  for (std::size_t c = 0; c < report.columns.size(); ++c) {
    out << ",error_" << c + 1 << ",ecr_" << c + 1;
  }
  out << '\n';
  for (const auto& row : report.rows) {
    out << row.n;
    for (std::size_t c = 0; c < row.errors.size(); ++c) {
      out << ',' << format("%.4e", row.errors[c]) << ',';
      if (row.ecr[c]) out << format("%.4f", *row.ecr[c]);
    }
    out << '\n';
  }
}

void write_json(std::ostream& out, const ConvergenceReport& report, bool metadata) {
  nlohmann::ordered_json doc;
  doc["columns"] = report.columns;
  auto& rows = doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json r;
    r["N"] = row.n;
    r["errors"] = row.errors;
    auto& ecr = r["ecr"] = nlohmann::ordered_json::array();
    for (const auto& e : row.ecr) ecr.push_back(e ? nlohmann::ordered_json(*e) : nullptr);
    rows.push_back(std::move(r));
  }
  doc["warnings"] = report.warnings;
  if (metadata) {
    auto& meta = doc["metadata"];
    for (const auto& [key, value] : report.config) meta["config"][key] = value;
    meta["special_functions"]["ok"] = report.special_functions_ok;
    meta["special_functions"]["detail"] = report.special_functions_detail;
    meta["wall_seconds"] = report.wall_seconds;
  }
  out << doc.dump(2) << '\n';
}

}  // namespace

void verify_ecr(const ConvergenceReport& report) {
  std::vector<ReportRow> recomputed = report.rows;
  fill_ecr(recomputed);
  for (std::size_t r = 0; r < report.rows.size(); ++r) {
    if (report.rows[r].errors.size() != report.columns.size() ||
        report.rows[r].ecr != recomputed[r].ecr) {
      throw std::logic_error("convergence report: e.c.r. column of row N = " +
                             std::to_string(report.rows[r].n) +
                             " is inconsistent with the error column");
    }
  }
}

void write_report(std::ostream& out, const ConvergenceReport& report, OutputFormat format,
                  bool metadata) {
  verify_ecr(report);
  if (format == OutputFormat::json) {
    write_json(out, report, metadata);
  } else {
    write_csv(out, report, metadata);
  }
  if (!out) throw IoError("failed to write the convergence report");
}

}  // namespace calderon
