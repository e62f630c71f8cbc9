#include "svrrg/trace_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace svrrg {

namespace {
void append_g17(std::string& out, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}
}  // namespace

std::string trace_to_csv(const ConvergenceTrace& trace) {
  std::string out = "epoch,passes,feasibility,rel_error,potential_norm,wall_ms\n";
  for (const auto& r : trace.rows) {
    out += std::to_string(r.epoch);
    out += ',';
    append_g17(out, r.passes);
    out += ',';
    append_g17(out, r.feasibility);
    out += ',';
    append_g17(out, r.rel_error);
    out += ',';
    append_g17(out, r.potential_norm);
    out += ',';
    append_g17(out, r.wall_ms);
    out += '\n';
  }
  return out;
}

void write_trace_csv(const std::string& path, const ConvergenceTrace& trace) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open trace output: " + path);
  const std::string csv = trace_to_csv(trace);
  out.write(csv.data(), static_cast<std::streamsize>(csv.size()));
  if (!out) throw std::runtime_error("trace write failed: " + path);
}

std::string trace_summary(const ConvergenceTrace& trace) {
  std::ostringstream os;
  os << trace.solver << ": " << (trace.rows.size() - 1) << " epochs recorded";
  if (!trace.rows.empty()) {
    const auto& last = trace.rows.back();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", last.passes);
    os << ", " << buf << " passes";
    std::snprintf(buf, sizeof buf, "%.3g", last.rel_error);
    os << ", final rel_error " << buf;
    std::snprintf(buf, sizeof buf, "%.3g", last.feasibility);
    os << ", feasibility " << buf;
  }
  os << ", " << (trace.converged ? "converged" : "not converged");
  if (trace.approx_optimum) os << " (approximate optimum: no reference)";
  if (trace.warm_epochs > 0) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", trace.warm_passes);
    os << "; warm start: " << trace.warm_epochs << " epochs, " << buf << " passes";
    if (trace.warm_budget_exceeded) os << " [budget exceeded before warm tolerance]";
  }
  if (std::isfinite(trace.theta0_after_warm)) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", trace.theta0_after_warm);
    os << "; theta0 after warm start " << buf
       << (trace.theta0_after_warm < 0.5 ? " (< 1/2)" : " (NOT < 1/2)");
  }
  return os.str();
}

}  // namespace svrrg
