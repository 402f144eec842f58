#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fadmm/problem.hpp"

namespace fadmm {

struct Dataset {
  std::string name;
  Matrix features;  // examples x dimensions
  Vec labels;
};

// Per-class mean and covariance (covariance normalized by the class count).
// Classes are the sign of the label; both must be present.
struct ClassStats {
  Vec mean_pos, mean_neg;
  Matrix cov_pos, cov_neg;
  std::size_t count_pos = 0, count_neg = 0;
};
ClassStats class_stats(const Dataset& ds);

// --- Sparse Fisher discriminant analysis -----------------------------------
// Variable: X in R^{n x r} with orthonormal columns, stored column-stacked.
// maximize between-class over within-class scatter with a top-k-minus-l1
// sparsity pull; both scatter matrices are Frobenius-normalized.
struct FdaInstance {
  Matrix within;   // C
  Matrix between;  // D
  std::size_t n = 0, r = 0, k = 0;
  double rho = 0.0;
};
FdaInstance fda_instance(const Dataset& ds, std::size_t r, double rho);
ProblemComponents build_fda_components(const FdaInstance& inst);
ProblemComponents build_fda(const Dataset& ds, std::size_t r, double rho);

// --- Robust Sharpe-ratio minimization ---------------------------------------
// Variable: portfolio weights on the probability simplex; denominator is the
// worst case over a family of covariance models.
struct SrmInstance {
  Matrix returns;  // the data matrix entering the hinge loss through -returns
  Vec labels;
  std::vector<Matrix> covariances;
};
SrmInstance srm_instance(const Dataset& ds, std::size_t p_count, std::uint64_t seed);
ProblemComponents build_srm_components(const SrmInstance& inst);
ProblemComponents build_srm(const Dataset& ds, std::size_t p_count, std::uint64_t seed);

// --- Robust sparse recovery --------------------------------------------------
// Variable: signal in a (possibly unbounded) box; numerator is an l1 data
// term plus an l1 penalty, denominator the top-k magnitude sum.
struct RecoveryInstance {
  Matrix a;
  Vec b;
  double rho0 = 0.0, rho1 = 0.0, rho2 = 0.0;
  std::size_t k = 0;
};
ProblemComponents build_recovery_components(const RecoveryInstance& inst);
ProblemComponents build_recovery(const Dataset& ds, double rho0, double rho1, double rho2,
                                 std::size_t k);

// --- Data ---------------------------------------------------------------------
// Gaussian matrix with unit-normalized columns and uniform +-1 labels.
// Deterministic in seed: features first (row-major), then labels.
Dataset gen_randn(std::size_t m, std::size_t n, std::uint64_t seed);

// LIBSVM text format: "label index:value ...", 1-based indices. Out-of-order
// indices within a line are accepted; a repeated index keeps the last value.
Dataset load_libsvm(const std::string& path);
void save_libsvm(const Dataset& ds, const std::string& path);

// Keeps rows labeled `pos` or `neg`, remapped to +1/-1.
Dataset select_label_pair(const Dataset& ds, double pos, double neg);
// Seeded row/column subsample (selection sorted ascending for determinism).
Dataset subsample(const Dataset& ds, std::size_t m, std::size_t n, std::uint64_t seed);
void normalize_columns(Dataset& ds);

}  // namespace fadmm
