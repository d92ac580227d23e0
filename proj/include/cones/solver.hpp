#pragma once

#include <optional>

#include "cones/belief.hpp"
#include "cones/estimator.hpp"

namespace cones {

/// Result of the constrained step
///   maximize <g, delta>  subject to  kl_from_delta(params, delta) <= eps^2.
struct ConesSolution {
  Vec delta;                   // packed (dmu, deta), length 2n
  std::optional<double> dual;  // Lagrange multiplier; empty when g == 0
  double achieved_kl = 0.0;    // kl_from_delta(params, delta)
  double objective = 0.0;      // <g, delta>
};

/// Smallest multiplier for which the stationarity conditions have a
/// solution: max(0, max_i(-2 * g_eta_i)). The dual domain is the open
/// interval (lambda_min, infinity).
double lambda_min(const GradientEstimate& g);

/// Stationary point of the Lagrangian at multiplier lambda:
///   dmu_i  = sigma_i^2 * g_mu_i / lambda
///   deta_i = log(1 + 2 * g_eta_i / lambda)
/// Throws std::domain_error when lambda <= lambda_min(g), where the log
/// argument stops being positive.
Vec stationary_delta(const BeliefParams& params, const GradientEstimate& g,
                     double lambda);

/// Solves the trust-region program by bisecting the dual. The map
/// lambda -> KL(stationary_delta(lambda)) is strictly decreasing on the dual
/// domain, so the KL constraint pins a unique multiplier; the returned step
/// satisfies |achieved_kl - eps^2| <= 1e-12 * max(1, eps^2) whenever g != 0.
/// A zero gradient yields a zero step with an undefined dual.
ConesSolution solve(const BeliefParams& params, const GradientEstimate& g,
                    double epsilon);

}  // namespace cones
