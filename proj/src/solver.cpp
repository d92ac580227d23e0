// Dual solver for the KL-ball step.
//
// The multiplier search runs in the shifted-log variable s with
// lambda = lambda_min + exp(s). Bisecting lambda directly cannot work at
// large radii: when some g_eta is negative the KL constraint can bind at a
// lambda whose distance from lambda_min is far below the double-precision
// resolution of lambda itself (the gap shrinks like exp(-2*eps^2)), while in
// s the root stays comfortably representable. The gradient is normalised by
// its max-norm first; the stationary step depends on g only through
// g / lambda, so this rescaling is exact in the step and keeps every
// intermediate quantity in a safe floating-point range.
#include "cones/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cones {

namespace {

struct DualPoint {
  Vec delta;
  double lambda = 0.0;
  double kl = 0.0;
};

void check_gradient(const BeliefParams& params, const GradientEstimate& g) {
  validate(params);
  if (g.g.size() != 2 * params.dim()) {
    throw std::invalid_argument("solver: gradient must have length 2n");
  }
  for (double v : g.g) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("solver: non-finite gradient entry");
    }
  }
}

// Stationary step for the normalised gradient at lambda = lm + exp(s).
// Negative g_eta coordinates go through forms that stay accurate when
// exp(s) is tiny relative to lm, including full underflow: the coordinate
// attaining lm keeps deta = s - log(lambda) exactly.
DualPoint eval_dual(const BeliefParams& params, const Vec& gn, double lm,
                    double s) {
  const std::size_t n = params.dim();
  const double w = std::exp(s);
  double lambda = lm + w;
  if (lambda <= 0.0) lambda = std::numeric_limits<double>::min();
  const double log_lambda = std::log(lambda);

  DualPoint p;
  p.lambda = lambda;
  p.delta.resize(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    p.delta[i] = params.var(i) * gn[i] / lambda;
    const double ge = gn[n + i];
    double deta = 0.0;
    if (ge > 0.0) {
      deta = std::log1p(2.0 * ge / lambda);
    } else if (ge < 0.0) {
      const double m = -2.0 * ge;  // in (0, lm]
      const double gap = lm - m;
      if (gap == 0.0) {
        deta = s - log_lambda;
      } else if (m / lambda >= 0.5) {
        deta = std::log(gap + w) - log_lambda;
      } else {
        deta = std::log1p(-m / lambda);
      }
    }
    p.delta[n + i] = deta;
  }
  p.kl = kl_from_delta(params, p.delta);
  return p;
}

}  // namespace

double lambda_min(const GradientEstimate& g) {
  double lm = 0.0;
  const std::size_t n = g.dim();
  for (std::size_t i = 0; i < n; ++i) {
    lm = std::max(lm, -2.0 * g.g[n + i]);
  }
  return lm;
}

Vec stationary_delta(const BeliefParams& params, const GradientEstimate& g,
                     double lambda) {
  check_gradient(params, g);
  if (!std::isfinite(lambda) || lambda <= lambda_min(g)) {
    throw std::domain_error(
        "solver: multiplier must exceed lambda_min(g), the log argument "
        "is not positive otherwise");
  }
  const std::size_t n = params.dim();
  Vec delta(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    delta[i] = params.var(i) * g.g[i] / lambda;
    delta[n + i] = std::log1p(2.0 * g.g[n + i] / lambda);
  }
  return delta;
}

ConesSolution solve(const BeliefParams& params, const GradientEstimate& g,
                    double epsilon) {
  check_gradient(params, g);
  if (!std::isfinite(epsilon) || epsilon <= 0.0) {
    throw std::invalid_argument("solver: epsilon must be positive");
  }
  const std::size_t n = params.dim();

  double gmax = 0.0;
  for (double v : g.g) gmax = std::max(gmax, std::fabs(v));
  if (gmax == 0.0) {
    ConesSolution zero;
    zero.delta.assign(2 * n, 0.0);
    return zero;
  }

  Vec gn(g.g);
  for (double& v : gn) v /= gmax;
  double lm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    lm = std::max(lm, -2.0 * gn[n + i]);
  }

  const double target = epsilon * epsilon;
  const double tol = 1e-12 * std::max(1.0, target);
  // The root in s is bounded: below by the linear KL growth of the binding
  // logvar coordinates (KL ~ -s/2 deep in the boundary layer), above by the
  // quadratic decay KL ~ 1/lambda^2.
  const double s_floor = -(2.0 * target + 750.0);
  const double s_ceil = 709.0;

  const auto finish = [&](DualPoint point) {
    ConesSolution sol;
    sol.dual = point.lambda * gmax;
    sol.achieved_kl = point.kl;
    sol.delta = std::move(point.delta);
    double obj = 0.0;
    for (std::size_t j = 0; j < 2 * n; ++j) {
      obj += g.g[j] * sol.delta[j];
    }
    sol.objective = obj;
    return sol;
  };

  double s_lo, s_hi;  // kl(s_lo) > target > kl(s_hi)
  DualPoint probe = eval_dual(params, gn, lm, 0.0);
  if (std::fabs(probe.kl - target) <= tol) {
    return finish(std::move(probe));
  }
  bool bracketed = false;
  if (probe.kl > target) {
    s_lo = 0.0;
    double step = 1.0;
    for (int k = 0; k < 200; ++k) {
      s_hi = std::min(s_lo + step, s_ceil);
      probe = eval_dual(params, gn, lm, s_hi);
      if (probe.kl < target) {
        bracketed = true;
        break;
      }
      s_lo = s_hi;
      step *= 2.0;
      if (s_lo >= s_ceil) break;
    }
  } else {
    s_hi = 0.0;
    double step = 1.0;
    for (int k = 0; k < 200; ++k) {
      s_lo = std::max(s_hi - step, s_floor);
      probe = eval_dual(params, gn, lm, s_lo);
      if (probe.kl > target) {
        bracketed = true;
        break;
      }
      s_hi = s_lo;
      step *= 2.0;
      if (s_hi <= s_floor) break;
    }
  }
  if (!bracketed) {
    throw std::runtime_error("solver: failed to bracket the dual root");
  }

  DualPoint best = eval_dual(params, gn, lm, s_hi);
  for (int it = 0; it < 128; ++it) {
    const double s_mid = 0.5 * (s_lo + s_hi);
    probe = eval_dual(params, gn, lm, s_mid);
    if (std::fabs(probe.kl - target) <= tol) {
      best = std::move(probe);
      break;
    }
    if (probe.kl > target) {
      s_lo = s_mid;
    } else {
      s_hi = s_mid;
      best = std::move(probe);  // feasible side
    }
  }
  return finish(std::move(best));
}

}  // namespace cones
