#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "cones/belief.hpp"
#include "cones/bruteforce.hpp"
#include "cones/estimator.hpp"
#include "cones/natgrad.hpp"
#include "cones/solver.hpp"
#include "doctest.h"

using cones::BeliefParams;
using cones::ConesSolution;
using cones::GradientEstimate;
using cones::Vec;

namespace {

BeliefParams make_params(Vec mean, Vec logvar) {
  BeliefParams p;
  p.mean = std::move(mean);
  p.logvar = std::move(logvar);
  return p;
}

GradientEstimate make_grad(Vec g) {
  GradientEstimate e;
  e.g = std::move(g);
  return e;
}

double cosine(const Vec& a, const Vec& b) {
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    ab += a[j] * b[j];
    aa += a[j] * a[j];
    bb += b[j] * b[j];
  }
  return ab / std::sqrt(aa * bb);
}

}  // namespace

TEST_CASE("lambda_min tracks the most negative logvar-block component") {
  CHECK(cones::lambda_min(make_grad({0.0, -1.0})) == 2.0);
  CHECK(cones::lambda_min(make_grad({5.0, 3.0})) == 0.0);
  CHECK(cones::lambda_min(make_grad({1.0, 2.0, 1.0, -3.0})) == 6.0);
}

TEST_CASE("stationary_delta reproduces the closed forms") {
  const BeliefParams p = make_params({0.0}, {0.0});

  const Vec mean_only =
      cones::stationary_delta(p, make_grad({1.0, 0.0}), 10.0);
  CHECK(mean_only[0] == 0.1);
  CHECK(mean_only[1] == 0.0);

  const Vec logvar_only =
      cones::stationary_delta(p, make_grad({0.0, 1.0}), 2.0);
  CHECK(logvar_only[0] == 0.0);
  CHECK(logvar_only[1] == doctest::Approx(std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("stationary_delta rejects multipliers at or below the domain edge") {
  const BeliefParams p = make_params({0.0}, {0.0});
  const GradientEstimate g = make_grad({0.0, -1.0});  // lambda_min = 2
  CHECK_THROWS_AS(cones::stationary_delta(p, g, 2.0), std::domain_error);
  CHECK_THROWS_AS(cones::stationary_delta(p, g, 1.9), std::domain_error);
  CHECK_THROWS_AS(cones::stationary_delta(
                      p, g, std::numeric_limits<double>::quiet_NaN()),
                  std::domain_error);
  CHECK_NOTHROW(cones::stationary_delta(p, g, 2.0 + 1e-9));
}

TEST_CASE("dual curve: KL of the stationary step decreases in the multiplier") {
  const BeliefParams p = make_params({0.1, -0.2}, {0.5, -0.5});
  const GradientEstimate g = make_grad({0.4, -0.6, 0.8, -0.3});
  const double lm = cones::lambda_min(g);
  REQUIRE(lm == doctest::Approx(0.6).epsilon(1e-15));

  double previous = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 20; ++k) {
    const double lambda = lm + std::pow(10.0, -3.0 + 6.0 * k / 19.0);
    const double kl =
        cones::kl_from_delta(p, cones::stationary_delta(p, g, lambda));
    CHECK(kl < previous);
    previous = kl;
  }
}

TEST_CASE("solve reproduces the mean-only closed form") {
  const BeliefParams p = make_params({0.0}, {0.0});
  const ConesSolution sol = cones::solve(p, make_grad({1.0, 0.0}), 0.1);
  // KL reduces to dmu^2/2, so the step is eps*sqrt(2) with dual 1/(eps*sqrt2).
  CHECK(sol.delta[0] ==
        doctest::Approx(0.1 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(sol.delta[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  REQUIRE(sol.dual.has_value());
  CHECK(*sol.dual ==
        doctest::Approx(1.0 / (0.1 * std::sqrt(2.0))).epsilon(1e-9));
  CHECK(sol.achieved_kl == doctest::Approx(0.01).epsilon(1e-10));
  CHECK(sol.objective == doctest::Approx(sol.delta[0]).epsilon(1e-15));
}

TEST_CASE("solve reproduces a logvar-only closed form") {
  // Radius chosen so the optimal logvar step is exactly log 2, with dual 2.
  const BeliefParams p = make_params({3.0}, {0.7});
  const double eps = std::sqrt(0.5 * (1.0 - std::log(2.0)));
  const ConesSolution sol = cones::solve(p, make_grad({0.0, 1.0}), eps);
  CHECK(sol.delta[0] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(sol.delta[1] == doctest::Approx(std::log(2.0)).epsilon(1e-9));
  REQUIRE(sol.dual.has_value());
  CHECK(*sol.dual == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("solve returns the zero step for a zero gradient") {
  const BeliefParams p = make_params({1.0, 2.0}, {0.3, -0.3});
  const ConesSolution sol = cones::solve(p, make_grad({0.0, 0.0, 0.0, 0.0}), 1.0);
  CHECK(sol.delta == Vec{0.0, 0.0, 0.0, 0.0});
  CHECK_FALSE(sol.dual.has_value());
  CHECK(sol.achieved_kl == 0.0);
  CHECK(sol.objective == 0.0);
}

TEST_CASE("solve input validation") {
  const BeliefParams p = make_params({0.0}, {0.0});
  CHECK_THROWS_AS(cones::solve(p, make_grad({1.0, 0.0}), 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(cones::solve(p, make_grad({1.0, 0.0}), -1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(cones::solve(p, make_grad({1.0}), 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      cones::solve(
          p, make_grad({std::numeric_limits<double>::quiet_NaN(), 0.0}), 1.0),
      std::invalid_argument);
}

TEST_CASE("solve pins the constraint and aligns with the gradient") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> logvar_dist(-2.0, 2.0);
  std::uniform_real_distribution<double> mean_dist(-2.0, 2.0);
  std::uniform_real_distribution<double> g_dist(-1.0, 1.0);
  const double radii[] = {0.1, 1.0, 10.0};
  const std::size_t dims[] = {1, 2, 5};

  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = dims[trial % 3];
    const double eps = radii[(trial / 3) % 3];
    BeliefParams p;
    p.mean.resize(n);
    p.logvar.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      p.mean[i] = mean_dist(rng);
      p.logvar[i] = logvar_dist(rng);
    }
    GradientEstimate g;
    g.g.resize(2 * n);
    for (double& v : g.g) v = g_dist(rng);

    const ConesSolution sol = cones::solve(p, g, eps);
    const double target = eps * eps;
    CHECK(std::fabs(sol.achieved_kl - target) <=
          1e-12 * std::max(1.0, target));
    CHECK(sol.objective > 0.0);
    REQUIRE(sol.dual.has_value());
    CHECK(*sol.dual >= cones::lambda_min(g) - 1e-9);
    for (double v : sol.delta) CHECK(std::isfinite(v));
    // Recomputing the KL from the returned step must agree with the
    // reported value.
    CHECK(cones::kl_from_delta(p, sol.delta) ==
          doctest::Approx(sol.achieved_kl).epsilon(1e-12));
  }
}

TEST_CASE("solve stays accurate deep in the dual boundary layer") {
  // With a negative logvar-block component and a large radius the binding
  // multiplier sits closer to its lower limit than double spacing allows;
  // the step must still hit the KL target instead of exploding.
  const BeliefParams p = make_params({0.0}, {0.0});
  const GradientEstimate g = make_grad({0.3, -0.7});

  for (double eps : {10.0, 100.0}) {
    CAPTURE(eps);
    const double target = eps * eps;
    const ConesSolution sol = cones::solve(p, g, eps);
    CHECK(std::fabs(sol.achieved_kl - target) <= 1e-12 * target);
    REQUIRE(sol.dual.has_value());
    CHECK(*sol.dual == doctest::Approx(1.4).epsilon(1e-9));
    // The logvar step soaks up almost the whole budget: kl ~ -deta/2.
    CHECK(sol.delta[1] < -1.8 * target + 10.0);
    CHECK(std::isfinite(sol.delta[1]));
    CHECK(sol.objective > 0.0);
  }
}

TEST_CASE("solve is invariant to the gradient scale") {
  const BeliefParams p = make_params({0.5, -0.5}, {0.8, -0.8});
  const GradientEstimate g = make_grad({0.7, -0.2, 0.4, -0.9});
  const ConesSolution base = cones::solve(p, g, 1.0);

  SUBCASE("power-of-two rescaling is bitwise identical") {
    const double c = 1099511627776.0;  // 2^40
    GradientEstimate scaled;
    scaled.g.resize(4);
    for (std::size_t j = 0; j < 4; ++j) scaled.g[j] = c * g.g[j];
    const ConesSolution sol = cones::solve(p, scaled, 1.0);
    CHECK(sol.delta == base.delta);
    CHECK(*sol.dual == c * *base.dual);
    CHECK(sol.achieved_kl == base.achieved_kl);
  }

  SUBCASE("general rescaling agrees to tight tolerance") {
    for (double c : {3.7, 1e-8, 1e8}) {
      CAPTURE(c);
      GradientEstimate scaled;
      scaled.g.resize(4);
      for (std::size_t j = 0; j < 4; ++j) scaled.g[j] = c * g.g[j];
      const ConesSolution sol = cones::solve(p, scaled, 1.0);
      for (std::size_t j = 0; j < 4; ++j) {
        CHECK(std::fabs(sol.delta[j] - base.delta[j]) <=
              1e-9 * std::max(1.0, std::fabs(base.delta[j])));
      }
      CHECK(*sol.dual == doctest::Approx(c * *base.dual).epsilon(1e-9));
    }
  }
}

TEST_CASE("small radii recover the natural-gradient direction") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  const std::size_t n = 5;
  BeliefParams p;
  p.mean.resize(n);
  p.logvar.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    p.mean[i] = d(rng);
    p.logvar[i] = 2.0 * d(rng);
  }
  GradientEstimate g;
  g.g.resize(2 * n);
  for (double& v : g.g) v = d(rng);

  const ConesSolution sol = cones::solve(p, g, 1e-6);
  const Vec ng = cones::natural_gradient(p, g);
  CHECK(cosine(sol.delta, ng) >= 0.9999);
}

TEST_CASE("solve matches an exhaustive grid oracle on a 1-D instance") {
  const BeliefParams p = make_params({0.2}, {0.4});
  const GradientEstimate g = make_grad({0.7, -0.5});
  const double eps = 1.0;
  const ConesSolution sol = cones::solve(p, g, eps);

  const double sigma = p.stddev(0);
  const auto objective = [&](const Vec& delta) {
    return g.g[0] * delta[0] + g.g[1] * delta[1];
  };
  const auto feasible = [&](const Vec& delta) {
    return cones::kl_from_delta(p, delta) <= eps * eps;
  };
  cones::GridSearchOptions opts;
  opts.refine_rounds = 5;
  opts.starts = 2;
  const cones::GridSearchResult oracle = cones::bruteforce_solve(
      objective, feasible, {-1.45 * sigma, -3.2}, {1.45 * sigma, 1.7}, 0.01,
      opts);
  CHECK(sol.objective == doctest::Approx(oracle.value).epsilon(1e-4));
  CHECK(sol.objective >= oracle.value - 1e-6);
}

TEST_CASE("optimal value is invariant to the variance parameterization") {
  // The same trust-region program posed in (dmu, dlogvar) and in
  // (dmu, dvariance) coordinates (objective composed through the bijection)
  // must reach the same optimal value.
  const BeliefParams p = make_params({0.0}, {0.6});
  const double v0 = p.var(0);
  const double eps = 0.5;
  const double a = 0.9, b = -0.6, c = 0.4;
  const auto f = [&](double dmu, double deta) {
    return a * dmu + b * std::sin(deta) + c * dmu * deta;
  };

  const auto obj_eta = [&](const Vec& d) { return f(d[0], d[1]); };
  const auto feas_eta = [&](const Vec& d) {
    return cones::kl_from_delta(p, {d[0], d[1]}) <= eps * eps;
  };
  const auto obj_var = [&](const Vec& d) {
    return f(d[0], std::log1p(d[1] / v0));
  };
  const auto feas_var = [&](const Vec& d) {
    if (d[1] <= -v0) return false;
    return cones::kl_from_delta(p, {d[0], std::log1p(d[1] / v0)}) <=
           eps * eps;
  };

  const double sigma = p.stddev(0);
  const double dmu_hi = 1.05 * eps * std::sqrt(2.0) * sigma;
  const double t_lo = -1.85, t_hi = 1.05;  // covers KL <= 0.25 in dlogvar
  cones::GridSearchOptions opts;
  opts.refine_rounds = 5;
  opts.starts = 3;
  const cones::GridSearchResult in_eta = cones::bruteforce_solve(
      obj_eta, feas_eta, {-dmu_hi, t_lo}, {dmu_hi, t_hi}, 0.01, opts);
  const cones::GridSearchResult in_var = cones::bruteforce_solve(
      obj_var, feas_var, {-dmu_hi, v0 * std::expm1(t_lo)},
      {dmu_hi, v0 * std::expm1(t_hi)}, 0.01, opts);
  CHECK(in_eta.value == doctest::Approx(in_var.value).epsilon(1e-4));
}
