#pragma once

#include <ostream>

#include "config.hpp"

namespace nonparax::cli {

// Executes the configured command and writes its artifacts. Assumes the
// config already passed validate_or_throw. Library errors propagate to the
// caller for exit-code mapping.
void execute(const RunConfig& cfg, std::ostream& out);

// Prints the dry-run precondition report (and writes it as JSON when an
// output prefix is configured). Never throws for violations.
void report_preconditions(const RunConfig& cfg, std::ostream& out);

}  // namespace nonparax::cli
