#pragma once

#include "cones/belief.hpp"
#include "cones/estimator.hpp"

namespace cones {

/// Diagonal of the Fisher information matrix in (mean, logvar) coordinates.
/// Closed form: 1/sigma_i^2 on the mean block, 1/2 on the logvar block.
struct FisherDiagonal {
  Vec d;  // length 2n
};

FisherDiagonal fisher_diagonal(const BeliefParams& params);

/// F^{-1} g, i.e. (sigma^2 .* g_mu, 2 * g_eta).
Vec natural_gradient(const BeliefParams& params, const GradientEstimate& g);

/// sqrt(v' F v) for a packed tangent vector v of length 2n.
double fisher_rao_norm(const BeliefParams& params, const Vec& v);

}  // namespace cones
