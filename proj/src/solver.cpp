#include "fadmm/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "fadmm/rng.hpp"

namespace fadmm {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kDenominatorFloor = 1e-12;

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::fadmm_d: return "fadmm-d";
    case Variant::fadmm_q: return "fadmm-q";
    case Variant::spgm_d: return "spgm-d";
    case Variant::spgm_q: return "spgm-q";
    case Variant::spm: return "spm";
  }
  return "unknown";
}

Variant variant_from_name(const std::string& name) {
  if (name == "fadmm-d") return Variant::fadmm_d;
  if (name == "fadmm-q") return Variant::fadmm_q;
  if (name == "spgm-d") return Variant::spgm_d;
  if (name == "spgm-q") return Variant::spgm_q;
  if (name == "spm") return Variant::spm;
  throw ParamError("unknown solver variant '" + name +
                   "' (expected fadmm-d, fadmm-q, spgm-d, spgm-q or spm)");
}

double SolverConfig::chi_effective() const {
  return chi > 0.0 ? chi : 2.0 * std::sqrt(1.0 + xi) + 1e-5;
}

void SolverConfig::validate() const {
  if (!(xi > 0.0)) throw ParamError("solver config: xi must be positive, got " + std::to_string(xi));
  if (!(theta > 1.0)) {
    throw ParamError("solver config: theta must exceed 1, got " + std::to_string(theta));
  }
  if (!(p > 0.0 && p < 1.0)) {
    throw ParamError("solver config: p must lie in (0, 1), got " + std::to_string(p));
  }
  if (!(beta0 > 0.0)) {
    throw ParamError("solver config: beta0 must be positive, got " + std::to_string(beta0));
  }
  if (iterations < 0) {
    throw ParamError("solver config: iteration budget must be nonnegative, got " +
                     std::to_string(iterations));
  }
  if (seconds < 0.0) {
    throw ParamError("solver config: seconds budget must be nonnegative, got " +
                     std::to_string(seconds));
  }
  const double floor = 2.0 * std::sqrt(1.0 + xi);
  if (!(chi_effective() > floor)) {
    throw ParamError("solver config: chi = " + std::to_string(chi_effective()) +
                     " must exceed 2*sqrt(1+xi) = " + std::to_string(floor));
  }
}

StepSizes schedule(const SolverConfig& cfg, long t) {
  if (t < 0) throw ParamError("schedule: t must be nonnegative, got " + std::to_string(t));
  StepSizes s;
  s.beta = cfg.beta0 * (1.0 + cfg.xi * std::pow(static_cast<double>(t), cfg.p));
  s.mu = cfg.chi_effective() / s.beta;
  return s;
}

namespace {

// Curvature of the x-step majorizer. Falls back to the convex part when the
// weak-convexity term drives it nonpositive (only reachable with violated
// assumptions, which the caller flags).
double step_curvature(const ProblemComponents& p, double beta, double weight,
                      unsigned* flag) {
  const double convex_part = p.smoothness_f + beta * p.a.op_norm * p.a.op_norm;
  double ell = convex_part + weight * p.weak_convexity_d;
  if (!(ell > 0.0)) {
    *flag |= kFlagCurvatureClamped;
    ell = convex_part;
  }
  if (!(ell > 0.0)) {
    throw ParamError("x-step: majorizer curvature is not positive (smoothness " +
                     std::to_string(p.smoothness_f) + ", beta " + std::to_string(beta) +
                     ", operator norm " + std::to_string(p.a.op_norm) + ")");
  }
  return ell;
}

XStep x_step_common(const ProblemComponents& p, const Vec& x, const Vec& y, const Vec& z,
                    double beta, double theta, double ell, const Vec& concave_pull,
                    unsigned flag) {
  XStep out;
  out.flag = flag;
  out.ell = ell;
  out.theta_ell = theta * ell;

  const Vec ax = p.a.apply(x);
  Vec carrier = vec::combine(1.0, z, beta, vec::diff(ax, y));
  out.grad_smooth = p.f_grad_at(x);
  vec::add_scaled(out.grad_smooth, 1.0, p.a.apply_adjoint(carrier));

  Vec step = out.grad_smooth;
  vec::add_scaled(step, -1.0, concave_pull);

  out.xprime = x;
  vec::add_scaled(out.xprime, -1.0 / out.theta_ell, step);
  out.x_next = p.delta_prox(out.xprime, 1.0 / out.theta_ell);
  return out;
}

}  // namespace

XStep x_update_d(const ProblemComponents& p, const Vec& x, const Vec& y, const Vec& z,
                 double beta, double lambda, double theta) {
  unsigned flag = 0;
  const double ell = step_curvature(p, beta, lambda, &flag);
  Vec xi_g = p.g_subgrad_at(x);
  Vec xi_d = p.d_subgrad(x);
  Vec pull = xi_g;
  vec::add_scaled(pull, lambda, xi_d);
  XStep out = x_step_common(p, x, y, z, beta, theta, ell, pull, flag);
  out.xi_g = std::move(xi_g);
  out.xi_d = std::move(xi_d);
  return out;
}

XStep x_update_q(const ProblemComponents& p, const Vec& x, const Vec& y, const Vec& z,
                 double beta, double alpha, double theta) {
  if (alpha == 0.0) throw ParamError("x_update_q: alpha must be nonzero");
  const double weight = 2.0 / alpha;
  unsigned flag = 0;
  const double ell = step_curvature(p, beta, weight, &flag);
  Vec xi_g = p.g_subgrad_at(x);
  Vec xi_sqrtd = p.sqrtd_subgrad(x);
  Vec pull = xi_g;
  vec::add_scaled(pull, weight, xi_sqrtd);
  XStep out = x_step_common(p, x, y, z, beta, theta, ell, pull, flag);
  out.xi_g = std::move(xi_g);
  out.xi_d = p.d_subgrad(x);
  return out;
}

double lambda_update(const ProblemComponents& p, const Vec& x, const Vec& y, const Vec& z,
                     double beta, double mu) {
  const double d = p.d_value(x);
  if (!(d > 0.0)) {
    throw DenominatorError("lambda_update: d(x) = " + std::to_string(d) + " is not positive",
                           d);
  }
  return u_value(p, x, y, z, beta, mu) / d;
}

double alpha_update(const ProblemComponents& p, const Vec& x, const Vec& y, const Vec& z,
                    double beta, double mu) {
  const double d = p.d_value(x);
  if (!(d > 0.0)) {
    throw DenominatorError("alpha_update: d(x) = " + std::to_string(d) + " is not positive",
                           d);
  }
  return std::sqrt(d) / u_value(p, x, y, z, beta, mu);
}

namespace {
YStep y_update_from_ax(const ProblemComponents& p, const Vec& ax_next, const Vec& z,
                       double beta, double mu) {
  YStep out;
  out.b = ax_next;
  vec::add_scaled(out.b, 1.0 / beta, z);
  SmoothedProxResult r = prox_smoothed(p.h, mu, beta, out.b);
  out.y_next = std::move(r.ybar);
  out.ycheck = std::move(r.ycheck);
  return out;
}
}  // namespace

YStep y_update(const ProblemComponents& p, const Vec& x_next, const Vec& z, double beta,
               double mu) {
  return y_update_from_ax(p, p.a.apply(x_next), z, beta, mu);
}

Vec z_update(const Vec& z, double beta, const Vec& ax_next, const Vec& y_next) {
  Vec out = z;
  vec::add_scaled(out, beta, vec::diff(ax_next, y_next));
  return out;
}

double e_plus(double beta, const Vec& x, const Vec& x_next, const Vec& y, const Vec& y_next,
              const Vec& ax_next) {
  return beta * (vec::norm(vec::diff(x_next, x)) + vec::norm(vec::diff(y_next, y)) +
                 vec::norm(vec::diff(ax_next, y_next)));
}

double crit_residual(const ProblemComponents& p, const CritInputs& w) {
  const double phi = varphi(p, w.x, w.y);
  Vec station = w.xi_delta;
  vec::add_scaled(station, 1.0, p.f_grad_at(w.x_next));
  vec::add_scaled(station, 1.0, p.a.apply_adjoint(w.z_next));
  vec::add_scaled(station, -1.0, w.xi_g);
  vec::add_scaled(station, -phi, w.xi_d);
  return vec::norm(vec::diff(w.x_next, w.x)) + vec::norm(vec::diff(w.ycheck_next, w.y)) +
         vec::norm(vec::diff(w.z_next, w.z)) +
         vec::norm(vec::diff(p.a.apply(w.x_next), w.ycheck_next)) +
         vec::norm(vec::diff(w.zeta, w.z_next)) + vec::norm(station);
}

namespace {

struct LoopKind {
  bool quadratic = false;  // Q-variant parametrization
  bool zero_multiplier = false;
};

void check_start(const ProblemComponents& p, const Vec& x0, const Vec& y0, const Vec& z0) {
  if (x0.size() != p.dim_x || y0.size() != p.dim_y || z0.size() != p.dim_y) {
    throw DimError("solver start: expected x of size " + std::to_string(p.dim_x) +
                   " and y, z of size " + std::to_string(p.dim_y) + ", got x " +
                   std::to_string(x0.size()) + ", y " + std::to_string(y0.size()) + ", z " +
                   std::to_string(z0.size()));
  }
  vec::require_finite(x0, "solver start x0");
  vec::require_finite(y0, "solver start y0");
  vec::require_finite(z0, "solver start z0");
  if (!p.delta_value(x0).feasible) {
    throw ParamError("solver start: x0 is not feasible for delta");
  }
}

Trace admm_loop(const ProblemComponents& p, const SolverConfig& cfg, const Vec& x0,
                const Vec& y0, const Vec& z0, LoopKind kind, const Observer& observer) {
  cfg.validate();
  check_start(p, x0, y0, z0);
  if (kind.quadratic && !p.sqrtd_weakly_convex) {
    throw UnsupportedVariantError(
        "quadratic fractional parametrization needs a weakly convex sqrt(d); this problem "
        "only certifies d itself");
  }

  Trace trace;
  trace.config = cfg;
  // A seconds budget can leave `iterations` nominally huge; don't let the
  // reservation itself exhaust memory.
  trace.records.reserve(std::min<std::size_t>(cfg.iterations + 1, 1u << 20));

  Vec x = x0, y = y0, z = z0;
  double alpha_prev = kNaN;
  const auto run_start = Clock::now();

  auto state_scalar_d = [&](double u, double d) { return u / d; };
  auto state_scalar_q = [&](double u, double d) { return std::sqrt(d) / u; };

  for (long t = 0; t < cfg.iterations; ++t) {
    if (cfg.seconds > 0.0 && ms_since(run_start) >= cfg.seconds * 1e3) break;
    const auto iter_start = Clock::now();
    const StepSizes s = schedule(cfg, t);
    unsigned flag = 0;

    const double d_t = p.d_value(x);
    if (!(d_t > 0.0)) {
      throw DenominatorError("solver: d(x) = " + std::to_string(d_t) +
                             " is not positive at iteration " + std::to_string(t), d_t);
    }
    if (d_t < kDenominatorFloor) flag |= kFlagDenominatorTiny;
    const double u_t = u_value(p, x, y, z, s.beta, s.mu);

    double scalar;
    XStep xs;
    if (kind.quadratic) {
      if (!(u_t > 0.0)) flag |= kFlagScalarNonpositive;
      scalar = state_scalar_q(u_t, d_t);
      xs = x_update_q(p, x, y, z, s.beta, scalar, cfg.theta);
    } else {
      scalar = state_scalar_d(u_t, d_t);
      if (!(scalar > 0.0)) flag |= kFlagScalarNonpositive;
      xs = x_update_d(p, x, y, z, s.beta, scalar, cfg.theta);
    }
    flag |= xs.flag;
    vec::require_finite(xs.x_next, "solver x-step");

    const Vec ax_next = p.a.apply(xs.x_next);
    YStep ys = y_update_from_ax(p, ax_next, z, s.beta, s.mu);
    vec::require_finite(ys.y_next, "solver y-step");

    Vec zeta = z_update(z, s.beta, ax_next, ys.y_next);
    vec::require_finite(zeta, "solver z-step");
    Vec z_next = kind.zero_multiplier ? vec::zeros(z.size()) : zeta;

    TraceRecord rec;
    rec.t = t;
    rec.beta = s.beta;
    rec.mu = s.mu;
    rec.scalar = scalar;
    rec.objective = objective(p, x);
    rec.u = u_t;
    rec.lk = kind.quadratic
                 ? (t == 0 ? kNaN : k_value(p, alpha_prev, x, y, z, s.beta, s.mu))
                 : u_t / d_t;
    rec.primal_residual = vec::norm(vec::diff(p.a.apply(x), y));
    rec.e_plus = e_plus(s.beta, x, xs.x_next, y, ys.y_next, ax_next);
    rec.flag = flag;
    if (cfg.record_diagnostics) {
      CritInputs w;
      w.x_next = xs.x_next;
      w.x = x;
      w.ycheck_next = ys.ycheck;
      w.y = y;
      w.z_next = z_next;
      w.z = z;
      w.xi_delta = vec::scaled(vec::diff(xs.xprime, xs.x_next), xs.theta_ell);
      w.zeta = zeta;
      w.xi_g = xs.xi_g;
      w.xi_d = xs.xi_d;
      rec.crit = crit_residual(p, w);
    } else {
      rec.crit = kNaN;
    }

    if (observer) {
      IterationReport r;
      r.t = t;
      r.beta = s.beta;
      r.mu = s.mu;
      r.scalar = scalar;
      r.variant = cfg.variant;
      r.x = &x;
      r.y = &y;
      r.z = &z;
      r.x_next = &xs.x_next;
      r.y_next = &ys.y_next;
      r.z_next = &z_next;
      r.ycheck_next = &ys.ycheck;
      r.b = &ys.b;
      r.xstep = &xs;
      observer(r);
    }

    if (kind.quadratic) alpha_prev = scalar;
    x = std::move(xs.x_next);
    y = std::move(ys.y_next);
    z = std::move(z_next);
    rec.wall_ms = cfg.record_wall ? ms_since(iter_start) : 0.0;
    trace.records.push_back(rec);
  }

  // Terminal record: the state the loop left behind, with the transition
  // columns empty.
  const long t_final = static_cast<long>(trace.records.size());
  const StepSizes s = schedule(cfg, t_final);
  unsigned flag = 0;
  const double d_f = p.d_value(x);
  if (!(d_f > 0.0)) {
    throw DenominatorError("solver: d(x) = " + std::to_string(d_f) +
                           " is not positive at the terminal iterate", d_f);
  }
  if (d_f < kDenominatorFloor) flag |= kFlagDenominatorTiny;
  const double u_f = u_value(p, x, y, z, s.beta, s.mu);

  TraceRecord rec;
  rec.t = t_final;
  rec.beta = s.beta;
  rec.mu = s.mu;
  if (kind.quadratic) {
    if (!(u_f > 0.0)) flag |= kFlagScalarNonpositive;
    rec.scalar = state_scalar_q(u_f, d_f);
    rec.lk = t_final == 0 ? kNaN : k_value(p, alpha_prev, x, y, z, s.beta, s.mu);
  } else {
    rec.scalar = state_scalar_d(u_f, d_f);
    if (!(rec.scalar > 0.0)) flag |= kFlagScalarNonpositive;
    rec.lk = rec.scalar;
  }
  rec.objective = objective(p, x);
  rec.u = u_f;
  rec.primal_residual = vec::norm(vec::diff(p.a.apply(x), y));
  rec.e_plus = kNaN;
  rec.crit = kNaN;
  rec.flag = flag;
  rec.wall_ms = 0.0;
  trace.records.push_back(rec);

  trace.x_final = std::move(x);
  trace.y_final = std::move(y);
  trace.z_final = std::move(z);
  return trace;
}

}  // namespace

Trace run(const ProblemComponents& p, const SolverConfig& cfg, const Vec& x0, const Vec& y0,
          const Vec& z0, const Observer& observer) {
  switch (cfg.variant) {
    case Variant::fadmm_d:
      return admm_loop(p, cfg, x0, y0, z0, {false, false}, observer);
    case Variant::fadmm_q:
      return admm_loop(p, cfg, x0, y0, z0, {true, false}, observer);
    case Variant::spgm_d:
    case Variant::spgm_q:
      return run_spgm(p, cfg, x0, y0, z0, observer);
    case Variant::spm:
      return run_spm(p, cfg, x0, observer);
  }
  throw ParamError("run: unhandled variant");
}

Trace run_spgm(const ProblemComponents& p, const SolverConfig& cfg, const Vec& x0,
               const Vec& y0, const Vec& z0, const Observer& observer) {
  const bool quadratic = cfg.variant == Variant::fadmm_q || cfg.variant == Variant::spgm_q;
  return admm_loop(p, cfg, x0, y0, z0, {quadratic, true}, observer);
}

Trace run_spm(const ProblemComponents& p, const SolverConfig& cfg, const Vec& x0,
              const Observer& observer) {
  cfg.validate();
  if (!p.project) {
    throw UnsupportedVariantError(
        "spm needs delta split into a projectable set plus a Lipschitz part; this problem "
        "provides no projection");
  }
  if (!p.h.subgrad) {
    throw UnsupportedVariantError("spm needs a subgradient oracle for h");
  }
  if (x0.size() != p.dim_x) {
    throw DimError("spm start: expected x of size " + std::to_string(p.dim_x) + ", got " +
                   std::to_string(x0.size()));
  }
  vec::require_finite(x0, "spm start x0");
  if (!p.delta_value(x0).feasible) throw ParamError("spm start: x0 is not feasible for delta");

  Trace trace;
  trace.config = cfg;
  trace.records.reserve(std::min<std::size_t>(cfg.iterations + 1, 1u << 20));

  Vec x = x0;
  const auto run_start = Clock::now();

  auto numerator = [&](const Vec& v, const Vec& av) {
    const double lip = p.delta_lip_value ? p.delta_lip_value(v) : 0.0;
    return p.f_at(v) + lip - p.g_at(v) + p.h.value(av);
  };

  for (long t = 0; t < cfg.iterations; ++t) {
    if (cfg.seconds > 0.0 && ms_since(run_start) >= cfg.seconds * 1e3) break;
    const auto iter_start = Clock::now();
    const StepSizes s = schedule(cfg, t);
    const double eta = 1.0 / s.beta;
    unsigned flag = 0;

    const double d_t = p.d_value(x);
    if (!(d_t > 0.0)) {
      throw DenominatorError("spm: d(x) = " + std::to_string(d_t) +
                             " is not positive at iteration " + std::to_string(t), d_t);
    }
    if (d_t < kDenominatorFloor) flag |= kFlagDenominatorTiny;

    const Vec ax = p.a.apply(x);
    const double u_t = numerator(x, ax);

    Vec du = p.f_grad_at(x);
    if (p.delta_lip_subgrad) vec::add_scaled(du, 1.0, p.delta_lip_subgrad(x));
    vec::add_scaled(du, -1.0, p.g_subgrad_at(x));
    vec::add_scaled(du, 1.0, p.a.apply_adjoint(p.h.subgrad(ax)));
    const Vec dd = p.d_subgrad(x);

    // Quotient rule: (du * d - u * dd) / d^2.
    Vec g = vec::combine(1.0 / d_t, du, -u_t / (d_t * d_t), dd);

    Vec x_next = x;
    vec::add_scaled(x_next, -eta, g);
    x_next = p.project(x_next);
    vec::require_finite(x_next, "spm step");

    TraceRecord rec;
    rec.t = t;
    rec.beta = s.beta;
    rec.mu = s.mu;
    rec.scalar = eta;
    rec.objective = u_t / d_t;
    rec.u = u_t;
    rec.lk = u_t / d_t;
    rec.primal_residual = 0.0;
    rec.e_plus = s.beta * (vec::norm(vec::diff(x_next, x)) +
                           vec::norm(vec::diff(p.a.apply(x_next), ax)));
    rec.crit = kNaN;
    rec.flag = flag;

    if (observer) {
      IterationReport r;
      r.t = t;
      r.beta = s.beta;
      r.mu = s.mu;
      r.scalar = eta;
      r.variant = Variant::spm;
      r.x = &x;
      r.x_next = &x_next;
      observer(r);
    }

    x = std::move(x_next);
    rec.wall_ms = cfg.record_wall ? ms_since(iter_start) : 0.0;
    trace.records.push_back(rec);
  }

  const long t_final = static_cast<long>(trace.records.size());
  const StepSizes s = schedule(cfg, t_final);
  unsigned flag = 0;
  const double d_f = p.d_value(x);
  if (!(d_f > 0.0)) {
    throw DenominatorError("spm: d(x) = " + std::to_string(d_f) +
                           " is not positive at the terminal iterate", d_f);
  }
  if (d_f < kDenominatorFloor) flag |= kFlagDenominatorTiny;
  const double u_f = numerator(x, p.a.apply(x));

  TraceRecord rec;
  rec.t = t_final;
  rec.beta = s.beta;
  rec.mu = s.mu;
  rec.scalar = 1.0 / s.beta;
  rec.objective = u_f / d_f;
  rec.u = u_f;
  rec.lk = rec.objective;
  rec.primal_residual = 0.0;
  rec.e_plus = kNaN;
  rec.crit = kNaN;
  rec.flag = flag;
  rec.wall_ms = 0.0;
  trace.records.push_back(rec);

  trace.x_final = std::move(x);
  return trace;
}

std::vector<double> potential(const ProblemComponents& p, const Trace& trace,
                              Variant variant) {
  if (variant == Variant::spm) {
    throw UnsupportedVariantError("potential: the Lyapunov sequence is not defined for spm");
  }
  const bool quadratic = variant == Variant::fadmm_q || variant == Variant::spgm_q;
  const double ch = p.h.lipschitz;
  const double xi = trace.config.xi;
  const double beta0 = trace.config.beta0;

  std::vector<double> out(trace.records.size(), kNaN);
  if (quadratic) {
    double abar = 0.0;
    for (const TraceRecord& rec : trace.records) {
      if (std::isfinite(rec.scalar) && rec.scalar > 0.0) abar = std::max(abar, rec.scalar);
    }
    for (std::size_t i = 0; i < trace.records.size(); ++i) {
      const TraceRecord& rec = trace.records[i];
      if (rec.t == 0 || !std::isfinite(rec.lk)) continue;
      out[i] = rec.lk +
               12.0 * abar * abar * (1.0 + xi) * ch * ch / (beta0 * static_cast<double>(rec.t)) +
               0.5 * abar * abar * ch * ch * rec.mu;
    }
  } else {
    // d is not recorded directly; recover its running lower bound from
    // d = U / lambda on rows with a positive multiplier.
    double dmin = std::numeric_limits<double>::infinity();
    for (const TraceRecord& rec : trace.records) {
      if (rec.scalar > 0.0 && std::isfinite(rec.scalar) && std::isfinite(rec.u)) {
        const double d = rec.u / rec.scalar;
        if (d > 0.0) dmin = std::min(dmin, d);
      }
    }
    if (!std::isfinite(dmin)) return out;
    for (std::size_t i = 0; i < trace.records.size(); ++i) {
      const TraceRecord& rec = trace.records[i];
      if (rec.t == 0 || !std::isfinite(rec.lk)) continue;
      out[i] = rec.lk +
               12.0 * (1.0 + xi) * ch * ch / (beta0 * dmin * static_cast<double>(rec.t)) +
               0.5 * ch * ch * rec.mu / dmin;
    }
  }
  return out;
}

InitState gaussian_init(const ProblemComponents& p, std::uint64_t seed) {
  Rng rng(seed);
  InitState s;
  s.x.resize(p.dim_x);
  for (double& v : s.x) v = rng.normal();
  s.y.resize(p.dim_y);
  for (double& v : s.y) v = rng.normal();
  s.z.resize(p.dim_y);
  for (double& v : s.z) v = rng.normal();
  s.x = p.delta_prox(s.x, 1e-8);
  return s;
}

}  // namespace fadmm
