#pragma once

#include <iosfwd>

#include "calderon/study.hpp"

namespace calderon {

/// CSV: header "N,error_1,ecr_1,...", errors as %.4e (five significant
/// digits), e.c.r. as %.4f, empty where undefined. Metadata goes into leading
/// '#' lines. JSON carries full precision.
///
/// The e.c.r. columns are recomputed from the errors before anything is
/// written; a mismatch throws std::logic_error.
void write_report(std::ostream& out, const ConvergenceReport& report, OutputFormat format,
                  bool metadata);

/// Throws std::logic_error if any stored e.c.r. differs from the one implied
/// by the error column.
void verify_ecr(const ConvergenceReport& report);

}  // namespace calderon
