#include "fadmm/apps.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <numeric>
#include <sstream>

#include "fadmm/prox.hpp"
#include "fadmm/rng.hpp"

namespace fadmm {

ClassStats class_stats(const Dataset& ds) {
  const std::size_t m = ds.features.rows(), n = ds.features.cols();
  if (ds.labels.size() != m) {
    throw DimError("class_stats: " + std::to_string(m) + " rows but " +
                   std::to_string(ds.labels.size()) + " labels");
  }
  ClassStats st;
  st.mean_pos.assign(n, 0.0);
  st.mean_neg.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (ds.labels[i] > 0.0) {
      kernels::axpy(1.0, ds.features.row(i), st.mean_pos.data(), n);
      ++st.count_pos;
    } else {
      kernels::axpy(1.0, ds.features.row(i), st.mean_neg.data(), n);
      ++st.count_neg;
    }
  }
  if (st.count_pos == 0 || st.count_neg == 0) {
    throw ParamError("class_stats: need both classes, got " + std::to_string(st.count_pos) +
                     " positive and " + std::to_string(st.count_neg) + " negative examples");
  }
  kernels::scal(1.0 / static_cast<double>(st.count_pos), st.mean_pos.data(), n);
  kernels::scal(1.0 / static_cast<double>(st.count_neg), st.mean_neg.data(), n);

  st.cov_pos = Matrix(n, n);
  st.cov_neg = Matrix(n, n);
  Vec centered(n);
  for (std::size_t i = 0; i < m; ++i) {
    const bool pos = ds.labels[i] > 0.0;
    const Vec& mu = pos ? st.mean_pos : st.mean_neg;
    Matrix& cov = pos ? st.cov_pos : st.cov_neg;
    kernels::sub(ds.features.row(i), mu.data(), centered.data(), n);
    for (std::size_t j = 0; j < n; ++j) {
      kernels::axpy(centered[j], centered.data(), cov.row(j), n);
    }
  }
  for (std::size_t j = 0; j < n * n; ++j) {
    st.cov_pos.data()[j] /= static_cast<double>(st.count_pos);
    st.cov_neg.data()[j] /= static_cast<double>(st.count_neg);
  }
  return st;
}

// --- FDA ---------------------------------------------------------------------

FdaInstance fda_instance(const Dataset& ds, std::size_t r, double rho) {
  const std::size_t n = ds.features.cols();
  if (r == 0 || r > n) {
    throw ParamError("fda: r = " + std::to_string(r) + " out of range for " +
                     std::to_string(n) + " features");
  }
  if (!(rho >= 0.0)) throw ParamError("fda: rho must be nonnegative");
  const ClassStats st = class_stats(ds);

  FdaInstance inst;
  inst.n = n;
  inst.r = r;
  inst.rho = rho;
  inst.k = std::max<std::size_t>(1, static_cast<std::size_t>(0.1 * static_cast<double>(n * r)));

  inst.between = Matrix(n, n);
  Vec diff_mean = vec::diff(st.mean_pos, st.mean_neg);
  for (std::size_t i = 0; i < n; ++i) {
    kernels::axpy(diff_mean[i], diff_mean.data(), inst.between.row(i), n);
  }
  inst.within = Matrix(n, n);
  for (std::size_t j = 0; j < n * n; ++j) {
    inst.within.data()[j] = st.cov_pos.data()[j] + st.cov_neg.data()[j];
  }

  const double fb = inst.between.frobenius_norm();
  if (fb > 0.0) kernels::scal(1.0 / fb, inst.between.data().data(), n * n);
  const double fw = inst.within.frobenius_norm();
  if (fw > 0.0) kernels::scal(1.0 / fw, inst.within.data().data(), n * n);
  return inst;
}

namespace {

// tr(X^T M X) for column-stacked X.
double trace_quadratic(const Matrix& m, const Vec& x, std::size_t n, std::size_t r) {
  double acc = 0.0;
  for (std::size_t j = 0; j < r; ++j) {
    Vec col(x.begin() + static_cast<std::ptrdiff_t>(j * n),
            x.begin() + static_cast<std::ptrdiff_t>((j + 1) * n));
    acc += vec::dot(col, matvec(m, col));
  }
  return acc;
}

// vec(scale * M X) for column-stacked X.
Vec trace_quadratic_grad(const Matrix& m, const Vec& x, std::size_t n, std::size_t r,
                         double scale) {
  Vec out(n * r);
  for (std::size_t j = 0; j < r; ++j) {
    Vec col(x.begin() + static_cast<std::ptrdiff_t>(j * n),
            x.begin() + static_cast<std::ptrdiff_t>((j + 1) * n));
    Vec mc = matvec(m, col);
    for (std::size_t i = 0; i < n; ++i) out[i + j * n] = scale * mc[i];
  }
  return out;
}

}  // namespace

ProblemComponents build_fda_components(const FdaInstance& inst) {
  const std::size_t n = inst.n, r = inst.r, k = inst.k;
  const double rho = inst.rho;
  auto within = std::make_shared<const Matrix>(inst.within);
  auto between = std::make_shared<const Matrix>(inst.between);

  ProblemComponents p;
  p.dim_x = n * r;
  p.dim_y = n * r;

  p.f_value = [within, n, r](const Vec& x) { return trace_quadratic(*within, x, n, r); };
  p.f_grad = [within, n, r](const Vec& x) {
    return trace_quadratic_grad(*within, x, n, r, 2.0);
  };
  p.smoothness_f = 2.0 * spectral_norm(*within, 1e-9, 800) * (1.0 + 1e-8);

  p.delta_prox = [n, r](const Vec& xp, double) { return prox_orthogonality(xp, n, r); };
  p.delta_value = [n, r](const Vec& x) {
    const Matrix xm = unstack_columns(x, n, r);
    Matrix g = gram(xm);
    for (std::size_t i = 0; i < r; ++i) g(i, i) -= 1.0;
    return FeasibleValue{g.frobenius_norm() <= 1e-6, 0.0};
  };

  if (rho > 0.0) {
    p.g_value = [rho, k](const Vec& x) { return rho * topk_value(x, k); };
    p.g_subgrad = [rho, k](const Vec& x) {
      return vec::scaled(topk_subgradient(x, k), rho);
    };
  }

  p.h = make_l1(rho, n * r);
  p.a = LinearOperator::identity(n * r);

  p.d_value = [between, n, r](const Vec& x) { return trace_quadratic(*between, x, n, r); };
  p.d_subgrad = [between, n, r](const Vec& x) {
    return trace_quadratic_grad(*between, x, n, r, 2.0);
  };
  // On the Stiefel manifold ||X||_F = sqrt(r), so the gradient 2 D X stays
  // within 2 ||D||_2 sqrt(r).
  p.lipschitz_d =
      2.0 * spectral_norm(*between, 1e-9, 800) * std::sqrt(static_cast<double>(r)) *
      (1.0 + 1e-8);
  p.weak_convexity_d = 0.0;
  p.d_weakly_convex = true;
  p.sqrtd_weakly_convex = true;

  p.project = [n, r](const Vec& x) { return prox_orthogonality(x, n, r); };
  return p;
}

ProblemComponents build_fda(const Dataset& ds, std::size_t r, double rho) {
  return build_fda_components(fda_instance(ds, r, rho));
}

// --- SRM ---------------------------------------------------------------------

SrmInstance srm_instance(const Dataset& ds, std::size_t p_count, std::uint64_t seed) {
  if (p_count == 0) throw ParamError("srm: need at least one covariance model");
  const std::size_t n = ds.features.cols();
  SrmInstance inst;
  inst.returns = ds.features;
  inst.labels = ds.labels;
  inst.covariances.reserve(p_count);
  Rng rng(seed);
  for (std::size_t c = 0; c < p_count; ++c) {
    Matrix y(n, n);
    for (double& v : y.data()) v = 10.0 * rng.normal();
    // C = Y Y^T / n.
    Matrix cov = gram(y.transposed());
    kernels::scal(1.0 / static_cast<double>(n), cov.data().data(), n * n);
    inst.covariances.push_back(std::move(cov));
  }
  return inst;
}

ProblemComponents build_srm_components(const SrmInstance& inst) {
  if (inst.covariances.empty()) throw ParamError("srm: no covariance models");
  const std::size_t n = inst.covariances.front().rows();
  const std::size_t m = inst.returns.rows();
  if (inst.returns.cols() != n) {
    throw DimError("srm: data has " + std::to_string(inst.returns.cols()) +
                   " columns but covariances are " + std::to_string(n) + "x" +
                   std::to_string(n));
  }
  auto covs = std::make_shared<const std::vector<Matrix>>(inst.covariances);

  ProblemComponents p;
  p.dim_x = n;
  p.dim_y = m;

  p.delta_prox = [](const Vec& xp, double) { return project_simplex(xp); };
  p.delta_value = [](const Vec& x) {
    double s = 0.0, lo = 0.0;
    for (double v : x) {
      s += v;
      lo = std::min(lo, v);
    }
    return FeasibleValue{std::fabs(s - 1.0) <= 1e-8 && lo >= -1e-12, 0.0};
  };

  p.h = make_generalized_max(inst.labels);
  p.a = LinearOperator::dense(inst.returns, -1.0);

  // Worst-case quadratic over the model family; ties to the lowest index.
  auto worst = [covs](const Vec& x) {
    std::size_t arg = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < covs->size(); ++i) {
      const double v = vec::dot(x, matvec((*covs)[i], x));
      if (v > best) {
        best = v;
        arg = i;
      }
    }
    return std::pair<double, std::size_t>(best, arg);
  };
  p.d_value = [worst](const Vec& x) { return worst(x).first; };
  p.d_subgrad = [covs, worst](const Vec& x) {
    const std::size_t j = worst(x).second;
    return vec::scaled(matvec((*covs)[j], x), 2.0);
  };
  double max_norm = 0.0;
  for (const Matrix& c : *covs) max_norm = std::max(max_norm, spectral_norm(c, 1e-8, 500));
  // Valid on the simplex, where ||x|| <= 1.
  p.lipschitz_d = 2.0 * max_norm * (1.0 + 1e-8);
  p.weak_convexity_d = 0.0;
  p.d_weakly_convex = true;
  p.sqrtd_weakly_convex = true;

  p.project = [](const Vec& x) { return project_simplex(x); };
  return p;
}

ProblemComponents build_srm(const Dataset& ds, std::size_t p_count, std::uint64_t seed) {
  return build_srm_components(srm_instance(ds, p_count, seed));
}

// --- Sparse recovery -----------------------------------------------------------

ProblemComponents build_recovery_components(const RecoveryInstance& inst) {
  const std::size_t m = inst.a.rows(), n = inst.a.cols();
  if (inst.b.size() != m) {
    throw DimError("recovery: matrix is " + std::to_string(m) + "x" + std::to_string(n) +
                   " but target has " + std::to_string(inst.b.size()) + " entries");
  }
  if (inst.k == 0 || inst.k > n) {
    throw ParamError("recovery: k = " + std::to_string(inst.k) + " out of range for " +
                     std::to_string(n) + " variables");
  }
  if (!(inst.rho0 > 0.0) || !(inst.rho1 >= 0.0) || !(inst.rho2 >= 0.0)) {
    throw ParamError("recovery: weights must satisfy rho0 > 0, rho1 >= 0, rho2 >= 0");
  }
  const double rho0 = inst.rho0, rho1 = inst.rho1, rho2 = inst.rho2;
  const std::size_t k = inst.k;

  ProblemComponents p;
  p.dim_x = n;
  p.dim_y = m;

  p.delta_prox = [rho0, rho2](const Vec& xp, double mu) {
    return prox_l1_box(xp, mu, rho2, rho0);
  };
  p.delta_value = [rho0, rho2](const Vec& x) {
    double l1 = 0.0, hi = 0.0;
    for (double v : x) {
      l1 += std::fabs(v);
      hi = std::max(hi, std::fabs(v));
    }
    return FeasibleValue{hi <= rho0 * (1.0 + 1e-12) || !std::isfinite(rho0), rho2 * l1};
  };

  p.h = make_shifted_l1(inst.b, rho1);
  p.a = LinearOperator::dense(inst.a);

  p.d_value = [k](const Vec& x) { return topk_value(x, k); };
  p.d_subgrad = [k](const Vec& x) { return topk_subgradient(x, k); };
  p.lipschitz_d = std::sqrt(static_cast<double>(k));
  p.weak_convexity_d = 0.0;
  p.d_weakly_convex = true;
  p.sqrtd_weakly_convex = false;  // sqrt of the top-k sum has no weak-convexity certificate

  p.project = [rho0](const Vec& x) { return project_box(x, -rho0, rho0); };
  p.delta_lip_value = [rho2](const Vec& x) {
    double l1 = 0.0;
    for (double v : x) l1 += std::fabs(v);
    return rho2 * l1;
  };
  p.delta_lip_subgrad = [rho2](const Vec& x) {
    Vec s(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      s[i] = x[i] > 0.0 ? rho2 : (x[i] < 0.0 ? -rho2 : 0.0);
    }
    return s;
  };
  return p;
}

ProblemComponents build_recovery(const Dataset& ds, double rho0, double rho1, double rho2,
                                 std::size_t k) {
  RecoveryInstance inst;
  inst.a = ds.features;
  inst.b = ds.labels;
  inst.rho0 = rho0;
  inst.rho1 = rho1;
  inst.rho2 = rho2;
  inst.k = k == 0 ? std::max<std::size_t>(
                        1, static_cast<std::size_t>(0.1 * static_cast<double>(ds.features.cols())))
                  : k;
  return build_recovery_components(inst);
}

// --- Data ----------------------------------------------------------------------

Dataset gen_randn(std::size_t m, std::size_t n, std::uint64_t seed) {
  if (m == 0 || n == 0) {
    throw ParamError("gen_randn: need positive dimensions, got " + std::to_string(m) + "x" +
                     std::to_string(n));
  }
  Rng rng(seed);
  Dataset ds;
  ds.name = "randn-" + std::to_string(m) + "-" + std::to_string(n);
  ds.features = Matrix(m, n);
  for (double& v : ds.features.data()) v = rng.normal();
  ds.labels.resize(m);
  for (double& v : ds.labels) v = rng.uniform() < 0.5 ? 1.0 : -1.0;
  normalize_columns(ds);
  return ds;
}

void normalize_columns(Dataset& ds) {
  const std::size_t m = ds.features.rows(), n = ds.features.cols();
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += ds.features(i, j) * ds.features(i, j);
    if (s > 0.0) {
      const double inv = 1.0 / std::sqrt(s);
      for (std::size_t i = 0; i < m; ++i) ds.features(i, j) *= inv;
    }
  }
}

namespace {

struct ParsedRow {
  double label = 0.0;
  std::vector<std::pair<std::size_t, double>> entries;
};

double parse_double(const std::string& token, long line_no, const char* what) {
  const char* begin = token.data();
  const char* end = begin + token.size();
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError("line " + std::to_string(line_no) + ": bad " + what + " '" + token + "'",
                     line_no);
  }
  return value;
}

}  // namespace

Dataset load_libsvm(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);

  std::vector<ParsedRow> rows;
  std::size_t max_index = 0;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string token;
    if (!(ls >> token)) continue;  // blank line
    if (token[0] == '#') continue;
    ParsedRow row;
    row.label = parse_double(token, line_no, "label");
    while (ls >> token) {
      const std::size_t colon = token.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == token.size()) {
        throw ParseError("line " + std::to_string(line_no) + ": expected index:value, got '" +
                         token + "'", line_no);
      }
      const double idx_raw = parse_double(token.substr(0, colon), line_no, "index");
      if (idx_raw < 1.0 || idx_raw != std::floor(idx_raw)) {
        throw ParseError("line " + std::to_string(line_no) + ": index must be a positive "
                         "integer, got '" + token.substr(0, colon) + "'", line_no);
      }
      const std::size_t idx = static_cast<std::size_t>(idx_raw);
      const double val = parse_double(token.substr(colon + 1), line_no, "value");
      row.entries.emplace_back(idx - 1, val);
      max_index = std::max(max_index, idx);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("'" + path + "' holds no examples", line_no);

  Dataset ds;
  const std::size_t slash = path.find_last_of('/');
  std::string stem = slash == std::string::npos ? path : path.substr(slash + 1);
  const std::size_t dot = stem.rfind(".libsvm");
  if (dot != std::string::npos) stem.resize(dot);
  ds.name = stem;
  ds.features = Matrix(rows.size(), max_index);
  ds.labels.resize(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    ds.labels[i] = rows[i].label;
    for (const auto& [j, v] : rows[i].entries) ds.features(i, j) = v;
  }
  return ds;
}

void save_libsvm(const Dataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("save_libsvm: cannot write '" + path + "'");
  char buf[64];
  auto fmt = [&buf](double v) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
  };
  for (std::size_t i = 0; i < ds.features.rows(); ++i) {
    out << fmt(ds.labels[i]);
    for (std::size_t j = 0; j < ds.features.cols(); ++j) {
      const double v = ds.features(i, j);
      if (v != 0.0) out << ' ' << (j + 1) << ':' << fmt(v);
    }
    out << '\n';
  }
}

Dataset select_label_pair(const Dataset& ds, double pos, double neg) {
  Dataset out;
  out.name = ds.name;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < ds.labels.size(); ++i) {
    if (ds.labels[i] == pos || ds.labels[i] == neg) keep.push_back(i);
  }
  if (keep.empty()) {
    throw ParamError("select_label_pair: no examples labeled " + std::to_string(pos) + " or " +
                     std::to_string(neg));
  }
  out.features = Matrix(keep.size(), ds.features.cols());
  out.labels.resize(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    out.labels[i] = ds.labels[keep[i]] == pos ? 1.0 : -1.0;
    for (std::size_t j = 0; j < ds.features.cols(); ++j) {
      out.features(i, j) = ds.features(keep[i], j);
    }
  }
  const bool has_pos = std::any_of(out.labels.begin(), out.labels.end(),
                                   [](double l) { return l > 0; });
  const bool has_neg = std::any_of(out.labels.begin(), out.labels.end(),
                                   [](double l) { return l < 0; });
  if (!has_pos || !has_neg) {
    throw ParamError("select_label_pair: classes " + std::to_string(pos) + "/" +
                     std::to_string(neg) + " are not both present");
  }
  return out;
}

namespace {
std::vector<std::size_t> pick_sorted(std::size_t total, std::size_t want, Rng& rng) {
  std::vector<std::size_t> idx(total);
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t i = total - 1; i > 0; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.uniform() * static_cast<double>(i + 1));
    std::swap(idx[i], idx[std::min(j, i)]);
  }
  idx.resize(want);
  std::sort(idx.begin(), idx.end());
  return idx;
}
}  // namespace

Dataset subsample(const Dataset& ds, std::size_t m, std::size_t n, std::uint64_t seed) {
  if (m == 0 || m > ds.features.rows() || n == 0 || n > ds.features.cols()) {
    throw ParamError("subsample: requested " + std::to_string(m) + "x" + std::to_string(n) +
                     " from a " + std::to_string(ds.features.rows()) + "x" +
                     std::to_string(ds.features.cols()) + " dataset");
  }
  Rng rng(seed);
  const auto rows = pick_sorted(ds.features.rows(), m, rng);
  const auto cols = pick_sorted(ds.features.cols(), n, rng);
  Dataset out;
  out.name = ds.name + "-" + std::to_string(m) + "-" + std::to_string(n);
  out.features = Matrix(m, n);
  out.labels.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    out.labels[i] = ds.labels[rows[i]];
    for (std::size_t j = 0; j < n; ++j) out.features(i, j) = ds.features(rows[i], cols[j]);
  }
  return out;
}

}  // namespace fadmm
