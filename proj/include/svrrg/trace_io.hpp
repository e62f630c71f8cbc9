#pragma once

#include <string>

#include "svrrg/solver.hpp"

namespace svrrg {

/// CSV rendering of a trace. Fixed schema, one row per epoch plus the
/// initial row:
///   epoch,passes,feasibility,rel_error,potential_norm,wall_ms
/// Floats carry 17 significant digits so equal runs diff clean.
std::string trace_to_csv(const ConvergenceTrace& trace);

void write_trace_csv(const std::string& path, const ConvergenceTrace& trace);

/// Human summary printed by the CLI after each run.
std::string trace_summary(const ConvergenceTrace& trace);

}  // namespace svrrg
