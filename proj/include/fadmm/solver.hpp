#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fadmm/problem.hpp"

namespace fadmm {

enum class Variant { fadmm_d, fadmm_q, spgm_d, spgm_q, spm };

const char* variant_name(Variant v);
Variant variant_from_name(const std::string& name);  // throws ParamError

struct SolverConfig {
  Variant variant = Variant::fadmm_d;
  double xi = 1.0;
  double theta = 1.01;
  double p = 1.0 / 3.0;
  // 0 means "use the default 2*sqrt(1+xi) + 1e-5" (the smallest admissible
  // smoothing factor plus a hair).
  double chi = 0.0;
  double beta0 = 1.0;
  long iterations = 1000;
  double seconds = 0.0;  // optional wall-clock budget, 0 disables
  std::uint64_t seed = 0;
  bool record_diagnostics = true;
  bool record_wall = true;

  double chi_effective() const;
  void validate() const;  // throws ParamError
};

struct StepSizes {
  double beta = 0.0;
  double mu = 0.0;
};

// beta^t = beta0 * (1 + xi * t^p), mu^t = chi / beta^t.
StepSizes schedule(const SolverConfig& cfg, long t);

// Assumption-violation flags, OR-ed per trace row. None of these abort a run.
inline constexpr unsigned kFlagScalarNonpositive = 1u;  // lambda <= 0 or U <= 0
inline constexpr unsigned kFlagDenominatorTiny = 2u;    // d(x) < 1e-12
inline constexpr unsigned kFlagCurvatureClamped = 4u;   // ell(beta) <= 0 fallback

struct TraceRecord {
  long t = 0;
  double beta = 0.0;
  double mu = 0.0;
  // lambda^t (D-variants), alpha^{t+1} (Q-variants) or the step size (SPM).
  double scalar = 0.0;
  double objective = 0.0;
  double u = 0.0;
  double lk = 0.0;
  double primal_residual = 0.0;
  double e_plus = 0.0;
  double crit = 0.0;
  unsigned flag = 0;
  double wall_ms = 0.0;
};

struct Trace {
  std::string instance;
  SolverConfig config;
  std::vector<TraceRecord> records;
  Vec x_final, y_final, z_final;
};

// The x-step's internals, kept because the stationarity residual and several
// tests need the exact quantities the update used.
struct XStep {
  Vec x_next;
  Vec xprime;        // the pre-prox point x - grad/(theta*ell)
  double ell = 0.0;  // majorizer curvature ell(beta)
  double theta_ell = 0.0;
  Vec grad_smooth;   // grad f(x) + A^T z + beta A^T (Ax - y)
  Vec xi_g;          // selected element of dg(x)
  Vec xi_d;          // selected element of dd(x)
  unsigned flag = 0;
};

XStep x_update_d(const ProblemComponents& p, const Vec& x, const Vec& y, const Vec& z,
                 double beta, double lambda, double theta);
XStep x_update_q(const ProblemComponents& p, const Vec& x, const Vec& y, const Vec& z,
                 double beta, double alpha, double theta);

double lambda_update(const ProblemComponents& p, const Vec& x, const Vec& y, const Vec& z,
                     double beta, double mu);
double alpha_update(const ProblemComponents& p, const Vec& x, const Vec& y, const Vec& z,
                    double beta, double mu);

struct YStep {
  Vec b;       // A x_next + z / beta
  Vec y_next;  // the smoothed-prox minimizer
  Vec ycheck;  // dual certificate point
};
YStep y_update(const ProblemComponents& p, const Vec& x_next, const Vec& z, double beta,
               double mu);

Vec z_update(const Vec& z, double beta, const Vec& ax_next, const Vec& y_next);

// beta * (||x+ - x|| + ||y+ - y|| + ||A x+ - y+||).
double e_plus(double beta, const Vec& x, const Vec& x_next, const Vec& y, const Vec& y_next,
              const Vec& ax_next);

// Inputs for the approximate-criticality residual at one iteration.
struct CritInputs {
  Vec x_next, x, ycheck_next, y, z_next, z;
  Vec xi_delta;  // theta*ell*(xprime - x_next), from the prox optimality condition
  Vec zeta;      // selected element of dh(ycheck_next)
  Vec xi_g, xi_d;
};

double crit_residual(const ProblemComponents& p, const CritInputs& w);

// Everything one iteration produced, handed to observers before the state
// advances. Pointers stay valid only during the callback.
struct IterationReport {
  long t = 0;
  double beta = 0.0, mu = 0.0;
  double scalar = 0.0;  // lambda, alpha or eta, depending on variant
  Variant variant = Variant::fadmm_d;
  const Vec* x = nullptr;
  const Vec* y = nullptr;
  const Vec* z = nullptr;
  const Vec* x_next = nullptr;
  const Vec* y_next = nullptr;
  const Vec* z_next = nullptr;
  const Vec* ycheck_next = nullptr;
  const Vec* b = nullptr;
  const XStep* xstep = nullptr;  // null for SPM
};

using Observer = std::function<void(const IterationReport&)>;

// Runs cfg.variant on p from the given start. x0 must be delta-feasible.
// Emits one record per completed iteration plus a terminal record, so
// iterations = 0 yields exactly the initial record.
Trace run(const ProblemComponents& p, const SolverConfig& cfg, const Vec& x0, const Vec& y0,
          const Vec& z0, const Observer& observer = {});

// The ADMM loop with the multiplier pinned to zero.
Trace run_spgm(const ProblemComponents& p, const SolverConfig& cfg, const Vec& x0,
               const Vec& y0, const Vec& z0, const Observer& observer = {});

// Projected subgradient on F = u/d directly (quotient rule). Needs the
// project/remainder decomposition of delta and an h subgradient.
Trace run_spm(const ProblemComponents& p, const SolverConfig& cfg, const Vec& x0,
              const Observer& observer = {});

// Lyapunov sequence reconstructed from a trace (NaN at t = 0, where the
// Q-variant weight is not yet defined).
std::vector<double> potential(const ProblemComponents& p, const Trace& trace,
                              Variant variant);

// Gaussian start drawn from `seed` (x entries first, then y, then z), with x
// made delta-feasible through a tiny-radius prox.
struct InitState {
  Vec x, y, z;
};
InitState gaussian_init(const ProblemComponents& p, std::uint64_t seed);

}  // namespace fadmm
