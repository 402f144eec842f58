#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fadmm/experiment.hpp"
#include "fadmm/prox.hpp"
#include "fadmm/rng.hpp"
#include "fadmm/version.hpp"

namespace {

using fadmm::Vec;

int cmd_run(const std::string& config_path) {
  const fadmm::RunSpec spec = fadmm::load_config(config_path);
  const fadmm::ExperimentResult result = fadmm::run_experiment(spec);
  std::printf("instance %s -> %s\n", result.instance.c_str(), spec.output_dir.c_str());
  for (const fadmm::SummaryRow& row : result.summary) {
    std::printf("  %-8s final F = %-14g [%s]\n", row.variant.c_str(), row.final_objective,
                row.status.c_str());
  }
  return 0;
}

int cmd_gen_data(const std::string& name, std::size_t m, std::size_t n,
                 std::uint64_t seed) {
  fadmm::Dataset ds = fadmm::gen_randn(m, n, seed);
  ds.name = name;
  std::filesystem::create_directories("data");
  const std::string path = "data/" + name + ".libsvm";
  fadmm::save_libsvm(ds, path);
  std::printf("wrote %zu x %zu dataset to %s\n", m, n, path.c_str());
  return 0;
}

// Coarse-to-fine grid minimization used by the self-test battery.
double refined_grid_min(const std::function<double(const Vec&)>& f, Vec lo, Vec hi,
                        int cells, int levels) {
  const std::size_t dim = lo.size();
  Vec best_point(dim, 0.0);
  double best = std::numeric_limits<double>::infinity();
  for (int level = 0; level < levels; ++level) {
    Vec point(dim);
    std::vector<int> idx(dim, 0);
    bool done = false;
    while (!done) {
      for (std::size_t d = 0; d < dim; ++d) {
        point[d] = lo[d] + (hi[d] - lo[d]) * idx[d] / cells;
      }
      const double v = f(point);
      if (v < best) {
        best = v;
        best_point = point;
      }
      std::size_t d = 0;
      while (d < dim && ++idx[d] > cells) {
        idx[d] = 0;
        ++d;
      }
      done = d == dim;
    }
    for (std::size_t d = 0; d < dim; ++d) {
      const double cell = (hi[d] - lo[d]) / cells;
      lo[d] = best_point[d] - 2.0 * cell;
      hi[d] = best_point[d] + 2.0 * cell;
    }
  }
  return best;
}

int cmd_prox_selftest() {
  fadmm::Rng rng(7);
  int failures = 0;
  auto report = [&failures](const char* name, double worst, double tol) {
    const bool ok = worst <= tol;
    if (!ok) ++failures;
    std::printf("%-22s worst objective gap %.3e (tol %.0e)  %s\n", name, worst, tol,
                ok ? "ok" : "FAIL");
  };

  auto gap_battery = [&](auto make_objective, auto run_prox, std::size_t max_dim) {
    double worst = 0.0;
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t dim = 1 + static_cast<std::size_t>(rng.uniform() * max_dim);
      Vec xp(dim);
      for (double& v : xp) v = rng.uniform(-3.0, 3.0);
      const double mu = rng.uniform(0.2, 2.0);
      auto objective = make_objective(xp, mu);
      const Vec result = run_prox(xp, mu);
      Vec lo(dim, -6.0), hi(dim, 6.0);
      const double oracle = refined_grid_min(objective, lo, hi, 40, 4);
      worst = std::max(worst, objective(result) - oracle);
    }
    return worst;
  };

  report("soft_threshold",
         gap_battery(
             [](const Vec& xp, double mu) {
               return [xp, mu](const Vec& v) {
                 double q = 0.0, l1 = 0.0;
                 for (std::size_t i = 0; i < v.size(); ++i) {
                   q += (v[i] - xp[i]) * (v[i] - xp[i]);
                   l1 += std::fabs(v[i]);
                 }
                 return q / (2.0 * mu) + l1;
               };
             },
             [](const Vec& xp, double mu) { return fadmm::soft_threshold(xp, mu); }, 3),
         1e-4);

  report("prox_l1_box",
         gap_battery(
             [](const Vec& xp, double mu) {
               return [xp, mu](const Vec& v) {
                 double q = 0.0, l1 = 0.0;
                 bool feas = true;
                 for (std::size_t i = 0; i < v.size(); ++i) {
                   q += (v[i] - xp[i]) * (v[i] - xp[i]);
                   l1 += std::fabs(v[i]);
                   feas = feas && std::fabs(v[i]) <= 1.5;
                 }
                 return feas ? q / (2.0 * mu) + 0.7 * l1
                             : std::numeric_limits<double>::infinity();
               };
             },
             [](const Vec& xp, double mu) { return fadmm::prox_l1_box(xp, mu, 0.7, 1.5); },
             3),
         1e-4);

  report("prox_generalized_max",
         gap_battery(
             [](const Vec& xp, double mu) {
               Vec b(xp.size());
               for (std::size_t i = 0; i < b.size(); ++i) b[i] = i % 2 ? 0.5 : -0.5;
               return [xp, mu, b](const Vec& v) {
                 double q = 0.0, m = 0.0;
                 for (std::size_t i = 0; i < v.size(); ++i) {
                   q += (v[i] - xp[i]) * (v[i] - xp[i]);
                   m = std::max(m, v[i] + b[i]);
                 }
                 return q / (2.0 * mu) + m;
               };
             },
             [](const Vec& xp, double mu) {
               Vec b(xp.size());
               for (std::size_t i = 0; i < b.size(); ++i) b[i] = i % 2 ? 0.5 : -0.5;
               return fadmm::prox_generalized_max(xp, mu, b);
             },
             3),
         1e-4);

  // Simplex projection against exhaustive support enumeration.
  {
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t dim = 2 + static_cast<std::size_t>(rng.uniform() * 2);
      Vec x(dim);
      for (double& v : x) v = rng.uniform(-2.0, 2.0);
      const Vec proj = fadmm::project_simplex(x);
      double best = std::numeric_limits<double>::infinity();
      for (unsigned mask = 1; mask < (1u << dim); ++mask) {
        double sum = 0.0;
        int cnt = 0;
        for (std::size_t i = 0; i < dim; ++i) {
          if (mask & (1u << i)) {
            sum += x[i];
            ++cnt;
          }
        }
        const double shift = (sum - 1.0) / cnt;
        double dist = 0.0;
        bool valid = true;
        for (std::size_t i = 0; i < dim; ++i) {
          if (mask & (1u << i)) {
            const double p = x[i] - shift;
            if (p < -1e-12) valid = false;
            dist += shift * shift;
          } else {
            dist += x[i] * x[i];
          }
        }
        if (valid) best = std::min(best, dist);
      }
      worst = std::max(worst, fadmm::vec::normsq(fadmm::vec::diff(proj, x)) - best);
    }
    report("project_simplex", worst, 1e-9);
  }

  // Orthogonality prox: result must be orthonormal and at least as close as
  // the input's normalized frame.
  {
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t n = 4 + static_cast<std::size_t>(rng.uniform() * 4);
      const std::size_t r = 1 + static_cast<std::size_t>(rng.uniform() * 3);
      Vec x(n * r);
      for (double& v : x) v = rng.normal();
      const Vec proj = fadmm::prox_orthogonality(x, n, r);
      fadmm::Matrix g = fadmm::gram(fadmm::unstack_columns(proj, n, r));
      for (std::size_t i = 0; i < r; ++i) g(i, i) -= 1.0;
      worst = std::max(worst, g.frobenius_norm());
    }
    report("prox_orthogonality", worst, 1e-10);
  }

  std::printf(failures == 0 ? "prox-selftest: all operators ok\n"
                            : "prox-selftest: %d operator(s) FAILED\n",
              failures);
  return failures == 0 ? 0 : 1;
}

fadmm::RunSpec bench_spec(const std::string& app, const std::string& dataset,
                          const std::string& out, std::uint64_t seed, long iters,
                          double seconds) {
  fadmm::RunSpec spec;
  spec.app = app;
  spec.dataset = dataset;
  spec.seed = seed;
  spec.iterations = iters;
  spec.seconds = seconds;
  spec.output_dir = out;
  spec.record_diagnostics = false;
  return spec;
}

int cmd_bench(const std::string& suite, const std::string& out, std::uint64_t seed,
              long iters, double seconds) {
  std::vector<fadmm::RunSpec> specs;
  if (suite == "fda") {
    for (double rho : {10.0, 100.0}) {
      fadmm::RunSpec s = bench_spec("fda", "randn-120-60", out + "/fda-rho" +
                                    std::to_string(static_cast<int>(rho)), seed, iters, seconds);
      s.rho = rho;
      s.r = 5;
      specs.push_back(s);
    }
  } else if (suite == "srm") {
    fadmm::RunSpec s = bench_spec("srm", "randn-80-40", out + "/srm", seed, iters, seconds);
    s.p_count = 100;
    specs.push_back(s);
  } else if (suite == "recovery") {
    const double weights[2][2] = {{10.0, 1.0}, {100.0, 100.0}};
    for (const auto& w : weights) {
      fadmm::RunSpec s = bench_spec("recovery", "randn-100-200",
                                    out + "/recovery-rho" +
                                        std::to_string(static_cast<int>(w[0])) + "-" +
                                        std::to_string(static_cast<int>(w[1])),
                                    seed, iters, seconds);
      s.rho1 = w[0];
      s.rho2 = w[1];
      specs.push_back(s);
    }
  } else {
    std::fprintf(stderr, "unknown suite '%s' (expected fda, srm or recovery)\n",
                 suite.c_str());
    return 2;
  }

  for (const fadmm::RunSpec& spec : specs) {
    std::filesystem::create_directories(spec.output_dir);
    const fadmm::ExperimentResult result = fadmm::run_experiment(spec);
    std::printf("%s:\n", result.instance.c_str());
    for (const fadmm::SummaryRow& row : result.summary) {
      std::printf("  %-8s final F = %-14g [%s]\n", row.variant.c_str(), row.final_objective,
                  row.status.c_str());
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"structured fractional minimization workbench"};
  app.set_version_flag("--version", fadmm::kVersion);
  app.require_subcommand(1);

  std::string config_path;
  CLI::App* run = app.add_subcommand("run", "run the experiment described by a config file");
  run->add_option("config", config_path, "path to a key = value config")->required();

  std::string gen_name;
  std::size_t gen_m = 0, gen_n = 0;
  std::uint64_t gen_seed = 0;
  CLI::App* gen = app.add_subcommand("gen-data", "generate a dataset into data/<name>.libsvm");
  gen->add_option("name", gen_name)->required();
  gen->add_option("m", gen_m)->required();
  gen->add_option("n", gen_n)->required();
  gen->add_option("--seed", gen_seed);

  CLI::App* selftest =
      app.add_subcommand("prox-selftest", "check every proximal operator against grid oracles");

  std::string suite, bench_out = "bench";
  std::uint64_t bench_seed = 0;
  long bench_iters = 1000;
  double bench_seconds = 0.0;
  CLI::App* bench = app.add_subcommand("bench", "run a benchmark suite");
  bench->add_option("--suite", suite, "fda, srm or recovery")->required();
  bench->add_option("--out", bench_out);
  bench->add_option("--seed", bench_seed);
  bench->add_option("--iters", bench_iters);
  bench->add_option("--seconds", bench_seconds);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path);
    if (gen->parsed()) return cmd_gen_data(gen_name, gen_m, gen_n, gen_seed);
    if (selftest->parsed()) return cmd_prox_selftest();
    if (bench->parsed()) return cmd_bench(suite, bench_out, bench_seed, bench_iters,
                                          bench_seconds);
  } catch (const fadmm::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
