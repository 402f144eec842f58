#pragma once

#include "fadmm/apps.hpp"
#include "fadmm/config.hpp"
#include "fadmm/report.hpp"

namespace fadmm {

// Dataset resolution: "randn-M-N" generates, a path (or anything with a '/'
// or a .libsvm suffix) loads directly, any other bare name loads the cache
// file data/<name>.libsvm. Loaded data is column-normalized after the
// optional label-pair selection and subsampling.
Dataset resolve_dataset(const RunSpec& spec);

struct BuiltInstance {
  std::string name;  // "<app>-<dataset>"
  ProblemComponents problem;
};
BuiltInstance build_instance(const RunSpec& spec);

struct ExperimentResult {
  std::string instance;
  std::vector<Trace> traces;  // completed variants, in request order
  std::vector<SummaryRow> summary;
};

// Runs every requested variant from one shared Gaussian start and writes
// <out>/<instance>_<variant>.csv, summary.csv, metadata.json and
// objective.svg. Variants a problem cannot support are skipped with the
// reason recorded; a zero iteration budget writes header-only traces.
ExperimentResult run_experiment(const RunSpec& spec);

}  // namespace fadmm
