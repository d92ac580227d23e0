#pragma once

#include "cones/belief.hpp"

namespace cones {

/// Monte-Carlo gradient of the expected loss with respect to the belief
/// parameters, packed as (mean block, logvar block).
struct GradientEstimate {
  Vec g;  // length 2n

  std::size_t dim() const { return g.size() / 2; }
};

/// Rank-based fitness shaping. Losses are sorted ascending (ties broken by
/// candidate index, so the result is deterministic); the candidate of rank r
/// receives utility r/(N-1) - 0.5. Best loss maps to -0.5, worst to +0.5,
/// and distinct losses sum to zero.
Vec centered_ranks(const Vec& losses);

/// Rank-shaped search gradient: (1/N) * sum_i t_i * score(x_i) with
/// t = centered_ranks(losses). Utilities are pooled across the whole batch.
GradientEstimate es_gradient(const BeliefParams& params,
                             const std::vector<Vec>& points,
                             const Vec& losses);
GradientEstimate es_gradient(const BeliefParams& params,
                             const CandidateBatch& batch, const Vec& losses);

/// Unshaped variant with t_i equal to the raw loss. This is the unbiased
/// estimator of the true gradient of the expected loss; the rank-shaped
/// variant trades that bias for scale invariance.
GradientEstimate es_gradient_plain(const BeliefParams& params,
                                   const std::vector<Vec>& points,
                                   const Vec& losses);
GradientEstimate es_gradient_plain(const BeliefParams& params,
                                   const CandidateBatch& batch,
                                   const Vec& losses);

}  // namespace cones
