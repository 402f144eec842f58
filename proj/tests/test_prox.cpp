#include <cmath>
#include <limits>

#include "doctest.h"
#include "fadmm/errors.hpp"
#include "fadmm/prox.hpp"
#include "fadmm/rng.hpp"
#include "oracles.hpp"

using namespace fadmm;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double l1_box_objective(const Vec& v, const Vec& xp, double mu, double rho2, double rho0) {
  double q = 0.0, l1 = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::fabs(v[i]) > rho0) return kInf;
    q += (v[i] - xp[i]) * (v[i] - xp[i]);
    l1 += std::fabs(v[i]);
  }
  return q / (2.0 * mu) + rho2 * l1;
}

double gen_max_objective(const Vec& x, const Vec& xp, double mu, const Vec& b) {
  double q = 0.0, m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    q += (x[i] - xp[i]) * (x[i] - xp[i]);
    m = std::max(m, x[i] + b[i]);
  }
  return q / (2.0 * mu) + m;
}

}  // namespace

TEST_SUITE("prox") {

TEST_CASE("soft threshold matches hand values and rejects negative tau") {
  CHECK(soft_threshold(Vec{3.0, -3.0, 0.5}, 1.0) == Vec{2.0, -2.0, 0.0});
  CHECK(soft_threshold(Vec{1.0}, 0.0) == Vec{1.0});
  CHECK_THROWS_AS((void)soft_threshold(Vec{1.0}, -0.1), ParamError);
}

TEST_CASE("simplex projection on the documented examples") {
  {
    const Vec p = project_simplex(Vec{0.3, 0.7});
    CHECK(p[0] == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(p[1] == doctest::Approx(0.7).epsilon(1e-15));
  }
  CHECK(project_simplex(Vec{2.0, 0.0}) == Vec{1.0, 0.0});
  {
    const Vec p = project_simplex(Vec{0.5, 0.5, 0.5});
    for (double v : p) CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  }
}

TEST_CASE("simplex projection equals active-set enumeration") {
  Rng rng(61);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform() * 5);
    Vec x(n);
    for (double& v : x) v = rng.uniform(-3.0, 3.0);
    const Vec got = project_simplex(x);
    const Vec want = oracles::simplex_projection_enumerated(x);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(got[i] >= 0.0);
      CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12).scale(1.0));
      sum += got[i];
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("l1 box prox on documented examples") {
  // Interior soft threshold when the box is inactive.
  CHECK(prox_l1_box(Vec{3.0}, 1.0, 1.0, 10.0) == Vec{2.0});
  // Box clips first when rho0 is small.
  CHECK(prox_l1_box(Vec{3.0}, 1.0, 1.0, 1.5) == Vec{1.5});
  // Unbounded box reduces to plain soft thresholding.
  CHECK(prox_l1_box(Vec{-3.0, 0.2}, 1.0, 1.0, kInf) == Vec{-2.0, 0.0});
  CHECK_THROWS_AS((void)prox_l1_box(Vec{1.0}, -1.0, 1.0, 1.0), ParamError);
}

TEST_CASE("l1 box prox beats a refined grid on random instances") {
  Rng rng(67);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform() * 3);
    Vec xp(n);
    for (double& v : xp) v = rng.uniform(-4.0, 4.0);
    const double mu = rng.uniform(0.1, 3.0);
    const double rho2 = rng.uniform(0.0, 2.0);
    const double rho0 = trial % 3 == 0 ? kInf : rng.uniform(0.2, 3.0);

    const Vec got = prox_l1_box(xp, mu, rho2, rho0);
    auto f = [&](const Vec& v) { return l1_box_objective(v, xp, mu, rho2, rho0); };
    const double box = std::isfinite(rho0) ? rho0 : 5.0;
    const auto grid = oracles::refined_grid_min(f, Vec(n, -box), Vec(n, box), 40, 5);
    CHECK(f(got) <= grid.value + 1e-9);
  }
}

TEST_CASE("l1 box prox breaks exact ties toward smaller magnitude") {
  // mu*rho2 = 2x' makes 0 and the soft-threshold point equidistant in
  // objective; the sparser answer must win.
  const Vec got = prox_l1_box(Vec{1.0}, 2.0, 1.0, kInf);
  CHECK(got[0] == 0.0);
}

TEST_CASE("generalized max prox on documented examples") {
  {
    // max(x'+b) <= 0: untouched.
    const Vec xp = {-0.5, -1.5};
    const Vec b = {-0.5, -0.5};
    CHECK(prox_generalized_max(xp, 1.0, b) == xp);
  }
  {
    // x'+b = (3, 0), mu = 1: dual lands on the simplex vertex, v moves to (2, 0).
    const Vec b = {1.0, -1.0};
    const Vec xp = {2.0, 1.0};  // x'+b = (3, 0)
    const Vec got = prox_generalized_max(xp, 1.0, b);
    CHECK(got[0] == doctest::Approx(1.0).epsilon(1e-14));  // v = 2, minus b
    CHECK(got[1] == doctest::Approx(1.0).epsilon(1e-14));  // v = 0, minus b
  }
  {
    // Tiny symmetric positives with large mu shrink together (to zero).
    const Vec b = {0.0, 0.0};
    const Vec xp = {1e-3, 1e-3};
    const Vec got = prox_generalized_max(xp, 100.0, b);
    CHECK(got[0] == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
    CHECK(got[0] == got[1]);
  }
  CHECK_THROWS_AS((void)prox_generalized_max(Vec{1.0}, 1.0, Vec{1.0, 2.0}), DimError);
}

TEST_CASE("generalized max prox beats a refined grid") {
  Rng rng(71);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform() * 3);
    Vec xp(n), b(n);
    for (double& v : xp) v = rng.uniform(-3.0, 3.0);
    for (double& v : b) v = rng.uniform(-1.0, 1.0);
    const double mu = rng.uniform(0.1, 3.0);

    const Vec got = prox_generalized_max(xp, mu, b);
    auto f = [&](const Vec& v) { return gen_max_objective(v, xp, mu, b); };
    const auto grid = oracles::refined_grid_min(f, Vec(n, -6.0), Vec(n, 6.0), 40, 5);
    CHECK(f(got) <= grid.value + 1e-9);
  }
}

TEST_CASE("generalized max prox exposes a feasible simplex dual in the tight branch") {
  Rng rng(73);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 3);
    Vec xp(n), b(n);
    for (double& v : xp) v = rng.uniform(0.5, 4.0);  // strongly active
    for (double& v : b) v = rng.uniform(0.0, 0.5);
    const double mu = rng.uniform(0.05, 0.5);  // small mu keeps the sum constraint tight

    const Vec got = prox_generalized_max(xp, mu, b);
    // Recover z from the optimality map v' - v = mu z.
    double l1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double z = (xp[i] + b[i] - (got[i] + b[i])) / mu;
      CHECK(z >= -1e-12);
      l1 += z;
    }
    CHECK(l1 == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("convex proxes are nonexpansive") {
  Rng rng(79);
  const Vec b = {0.3, -0.2, 0.1, 0.0};
  for (int trial = 0; trial < 100; ++trial) {
    Vec u(4), v(4);
    for (double& e : u) e = rng.uniform(-3.0, 3.0);
    for (double& e : v) e = rng.uniform(-3.0, 3.0);
    const double mu = rng.uniform(0.1, 2.0);
    const double gap = vec::norm(vec::diff(u, v)) * (1.0 + 1e-12);

    CHECK(vec::norm(vec::diff(soft_threshold(u, mu), soft_threshold(v, mu))) <= gap);
    CHECK(vec::norm(vec::diff(prox_l1_box(u, mu, 0.5, 1.0), prox_l1_box(v, mu, 0.5, 1.0))) <=
          gap);
    CHECK(vec::norm(vec::diff(project_simplex(u), project_simplex(v))) <= gap);
    CHECK(vec::norm(vec::diff(prox_generalized_max(u, mu, b),
                              prox_generalized_max(v, mu, b))) <= gap);
    CHECK(vec::norm(vec::diff(project_box(u, -1.0, 1.0), project_box(v, -1.0, 1.0))) <= gap);
  }
}

TEST_CASE("projections are idempotent") {
  Rng rng(83);
  for (int trial = 0; trial < 50; ++trial) {
    Vec x(5);
    for (double& v : x) v = rng.uniform(-2.0, 2.0);
    // Sort-threshold re-derives its shift from the already-projected point, so
    // simplex idempotence holds to machine precision; box clamping is exact.
    const Vec s1 = project_simplex(x);
    CHECK(vec::norm(vec::diff(project_simplex(s1), s1)) <= 1e-14);
    const Vec b1 = project_box(x, -0.5, 0.75);
    CHECK(project_box(b1, -0.5, 0.75) == b1);
  }
  Vec x(12);
  for (double& v : x) v = rng.normal();
  const Vec o1 = prox_orthogonality(x, 4, 3);
  const Vec o2 = prox_orthogonality(o1, 4, 3);
  CHECK(vec::norm(vec::diff(o1, o2)) <= 1e-12);
}

TEST_CASE("orthogonality prox: diagonal example and optimality") {
  {
    // mat(x') = diag(2, 3) stacked by columns: polar factor is the identity.
    const Vec xp = {2.0, 0.0, 0.0, 3.0};
    const Vec got = prox_orthogonality(xp, 2, 2);
    CHECK(got[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(got[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(got[2] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(got[3] == doctest::Approx(1.0).epsilon(1e-12));
  }
  Rng rng(89);
  Vec xp(6 * 2);
  for (double& v : xp) v = rng.normal();
  const Vec got = prox_orthogonality(xp, 6, 2);
  const double got_inner = vec::dot(got, xp);
  for (int trial = 0; trial < 500; ++trial) {
    const Matrix q = oracles::random_orthonormal(rng, 6, 2);
    CHECK(vec::dot(stack_columns(q), xp) <= got_inner + 1e-10);
  }
}

TEST_CASE("orthogonality prox output is orthonormal even from degenerate input") {
  const Vec zero(8 * 3, 0.0);
  const Vec got = prox_orthogonality(zero, 8, 3);
  Matrix g = gram(unstack_columns(got, 8, 3));
  for (std::size_t i = 0; i < 3; ++i) g(i, i) -= 1.0;
  CHECK(g.frobenius_norm() <= 1e-12);
  CHECK_THROWS_AS((void)prox_orthogonality(Vec{1.0, 2.0}, 2, 2), DimError);
}

TEST_CASE("box projection requires an ordered interval") {
  CHECK(project_box(Vec{-2.0, 0.0, 2.0}, -1.0, 1.0) == Vec{-1.0, 0.0, 1.0});
  CHECK_THROWS_AS((void)project_box(Vec{0.0}, 1.0, -1.0), ParamError);
}

TEST_CASE("column stacking round trips") {
  Matrix m(3, 2);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j) m(i, j) = 10.0 * i + j;
  const Vec v = stack_columns(m);
  CHECK(v == Vec{0.0, 10.0, 20.0, 1.0, 11.0, 21.0});
  const Matrix back = unstack_columns(v, 3, 2);
  CHECK(back.data() == m.data());
}

}  // TEST_SUITE
