#include "fadmm/experiment.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <limits>

namespace fadmm {

namespace {

bool starts_with(const std::string& s, const char* prefix) {
  return s.rfind(prefix, 0) == 0;
}

bool parse_randn_name(const std::string& name, std::size_t* m, std::size_t* n) {
  if (!starts_with(name, "randn-")) return false;
  const std::size_t dash = name.find('-', 6);
  if (dash == std::string::npos) return false;
  const std::string ms = name.substr(6, dash - 6), ns = name.substr(dash + 1);
  auto to_size = [](const std::string& v, std::size_t* out) {
    unsigned long long raw = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), raw);
    if (ec != std::errc() || ptr != v.data() + v.size() || raw == 0) return false;
    *out = static_cast<std::size_t>(raw);
    return true;
  };
  return to_size(ms, m) && to_size(ns, n);
}

}  // namespace

Dataset resolve_dataset(const RunSpec& spec) {
  std::size_t m = 0, n = 0;
  if (parse_randn_name(spec.dataset, &m, &n)) {
    return gen_randn(m, n, spec.seed);
  }
  std::string path = spec.dataset;
  if (path.find('/') == std::string::npos && path.find(".libsvm") == std::string::npos) {
    path = "data/" + path + ".libsvm";
  }
  Dataset ds = load_libsvm(path);
  if (spec.has_label_pair) ds = select_label_pair(ds, spec.label_pos, spec.label_neg);
  if (spec.subset_rows > 0 || spec.subset_cols > 0) {
    const std::size_t rows = spec.subset_rows > 0 ? spec.subset_rows : ds.features.rows();
    const std::size_t cols = spec.subset_cols > 0 ? spec.subset_cols : ds.features.cols();
    ds = subsample(ds, rows, cols, spec.seed);
  }
  normalize_columns(ds);
  return ds;
}

BuiltInstance build_instance(const RunSpec& spec) {
  spec.validate();
  const Dataset ds = resolve_dataset(spec);
  BuiltInstance out;
  out.name = spec.app + "-" + ds.name;
  if (spec.app == "fda") {
    out.problem = build_fda(ds, spec.r, spec.rho);
  } else if (spec.app == "srm") {
    out.problem = build_srm(ds, spec.p_count, spec.seed + 1);
  } else {
    out.problem = build_recovery(ds, spec.rho0, spec.rho1, spec.rho2, spec.k);
  }
  return out;
}

ExperimentResult run_experiment(const RunSpec& spec) {
  BuiltInstance inst = build_instance(spec);
  std::filesystem::create_directories(spec.output_dir);

  ExperimentResult result;
  result.instance = inst.name;

  // One shared start per experiment so variants are comparable row by row.
  const InitState init = gaussian_init(inst.problem, spec.seed + 2);

  std::vector<Trace> all_for_plot;
  for (Variant v : spec.variants_effective()) {
    SummaryRow row;
    row.variant = variant_name(v);
    row.instance = inst.name;

    SolverConfig cfg;
    cfg.variant = v;
    cfg.xi = spec.xi;
    cfg.theta = spec.theta;
    cfg.p = spec.p;
    cfg.chi = spec.chi;
    cfg.beta0 = spec.beta0_effective();
    cfg.iterations = spec.iterations;
    cfg.seconds = spec.seconds;
    cfg.seed = spec.seed;
    cfg.record_diagnostics = spec.record_diagnostics;
    cfg.record_wall = spec.wall_timing;

    const std::string csv_path =
        spec.output_dir + "/" + inst.name + "_" + row.variant + ".csv";

    if (spec.iterations == 0 && spec.seconds == 0.0) {
      // Zero budget: leave the trace file as a bare header.
      Trace empty;
      empty.instance = inst.name;
      empty.config = cfg;
      write_trace_csv(empty, csv_path);
      row.final_objective = std::numeric_limits<double>::quiet_NaN();
      row.status = "skipped (zero budget)";
      result.summary.push_back(std::move(row));
      continue;
    }

    try {
      Trace trace = run(inst.problem, cfg, init.x, init.y, init.z);
      trace.instance = inst.name;
      write_trace_csv(trace, csv_path);
      const TraceRecord& last = trace.records.back();
      row.final_objective = last.objective;
      row.iterations = last.t;
      double total_ms = 0.0;
      for (const TraceRecord& r : trace.records) total_ms += r.wall_ms;
      row.wall_ms = total_ms;
      row.status = "ok";
      all_for_plot.push_back(trace);
      result.traces.push_back(std::move(trace));
    } catch (const UnsupportedVariantError& e) {
      row.final_objective = std::numeric_limits<double>::quiet_NaN();
      row.status = std::string("skipped: ") + e.what();
    } catch (const Error& e) {
      row.final_objective = std::numeric_limits<double>::quiet_NaN();
      row.status = std::string("failed: ") + e.what();
    }
    result.summary.push_back(std::move(row));
  }

  write_summary_csv(result.summary, spec.output_dir + "/summary.csv");
  write_metadata(spec, inst.name, spec.output_dir + "/metadata.json");
  // No plot when every variant failed or the budget was zero.
  if (!all_for_plot.empty()) {
    emit_svg(all_for_plot, "objective", spec.output_dir + "/objective.svg");
  }
  return result;
}

}  // namespace fadmm
