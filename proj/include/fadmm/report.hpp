#pragma once

#include <string>
#include <vector>

#include "fadmm/config.hpp"
#include "fadmm/solver.hpp"

namespace fadmm {

inline constexpr const char* kTraceCsvHeader =
    "t,beta,mu,scalar,objective,U,LK,primal_residual,e_plus,crit,flag,wall_ms";

// Shortest-round-trip float formatting (locale-free); "nan" for NaN.
std::string format_double(double v);

void write_trace_csv(const Trace& trace, const std::string& path);
std::string trace_csv_text(const Trace& trace);

struct SummaryRow {
  std::string variant;
  std::string instance;
  double final_objective = 0.0;
  long iterations = 0;
  double wall_ms = 0.0;
  std::string status;  // "ok" or the error that stopped the variant
};
void write_summary_csv(const std::vector<SummaryRow>& rows, const std::string& path);

// Full reproduction record: config, seed, library version, instance shape.
void write_metadata(const RunSpec& spec, const std::string& instance,
                    const std::string& path);

// Iteration-indexed curves for one trace column across several traces.
// metric is a CSV column name (objective, crit, e_plus, primal_residual, U).
// Output bytes depend only on the traces, never on the clock.
void emit_svg(const std::vector<Trace>& traces, const std::string& metric,
              const std::string& path);
std::string svg_text(const std::vector<Trace>& traces, const std::string& metric);

}  // namespace fadmm
