#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "fadmm/solver.hpp"

namespace fadmm {

// One experiment: an application instance plus the solver variants to run on
// it. Parsed from flat "key = value" text ('#' comments allowed). Zero-valued
// chi/beta0/k mean "derive the default".
struct RunSpec {
  std::string app;      // fda | srm | recovery
  std::string dataset;  // randn-M-N, a bare cached-dataset name, or a path
  std::vector<Variant> variants;  // empty -> every variant the app supports

  long iterations = 1000;
  double seconds = 0.0;
  std::uint64_t seed = 0;
  std::string output_dir = "out";

  double xi = 1.0;
  double theta = 1.01;
  double p = 1.0 / 3.0;
  double chi = 0.0;
  double beta0 = 0.0;
  bool record_diagnostics = true;
  bool wall_timing = true;  // timing = wall | none

  // fda
  double rho = 10.0;
  std::size_t r = 20;
  // srm
  std::size_t p_count = 100;
  // recovery
  double rho0 = std::numeric_limits<double>::infinity();
  double rho1 = 10.0;
  double rho2 = 1.0;
  std::size_t k = 0;

  // optional LIBSVM post-processing
  bool has_label_pair = false;
  double label_pos = 0.0, label_neg = 0.0;
  std::size_t subset_rows = 0, subset_cols = 0;  // 0 -> keep all

  void validate() const;  // throws ParamError
  double beta0_effective() const;
  std::vector<Variant> variants_effective() const;
};

// Throws ParseError (with line number) on malformed lines or unknown keys.
RunSpec parse_config(const std::string& text);
RunSpec load_config(const std::string& path);

// Canonical text form; parse_config(serialize_config(s)) reproduces s.
std::string serialize_config(const RunSpec& spec);

}  // namespace fadmm
