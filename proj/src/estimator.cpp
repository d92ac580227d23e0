#include "cones/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cones {

namespace {

void check_losses(const Vec& losses) {
  for (double l : losses) {
    if (!std::isfinite(l)) {
      throw std::invalid_argument("estimator: non-finite loss");
    }
  }
}

GradientEstimate weighted_score_average(const BeliefParams& params,
                                        const std::vector<Vec>& points,
                                        const Vec& weights) {
  const std::size_t count = points.size();
  if (weights.size() != count) {
    throw std::invalid_argument("estimator: points/losses size mismatch");
  }
  const std::size_t n = params.dim();
  GradientEstimate out;
  out.g.assign(2 * n, 0.0);
  for (std::size_t k = 0; k < count; ++k) {
    const Vec s = score(params, points[k]);
    for (std::size_t j = 0; j < 2 * n; ++j) {
      out.g[j] += weights[k] * s[j];
    }
  }
  const double inv = 1.0 / static_cast<double>(count);
  for (double& v : out.g) v *= inv;
  return out;
}

}  // namespace

Vec centered_ranks(const Vec& losses) {
  const std::size_t count = losses.size();
  if (count < 2) {
    throw std::invalid_argument("estimator: need at least two losses");
  }
  check_losses(losses);
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return losses[a] < losses[b];
                   });
  Vec utilities(count);
  const double denom = static_cast<double>(count - 1);
  for (std::size_t rank = 0; rank < count; ++rank) {
    utilities[order[rank]] = static_cast<double>(rank) / denom - 0.5;
  }
  return utilities;
}

GradientEstimate es_gradient(const BeliefParams& params,
                             const std::vector<Vec>& points,
                             const Vec& losses) {
  validate(params);
  return weighted_score_average(params, points, centered_ranks(losses));
}

GradientEstimate es_gradient(const BeliefParams& params,
                             const CandidateBatch& batch, const Vec& losses) {
  return es_gradient(params, batch.points, losses);
}

GradientEstimate es_gradient_plain(const BeliefParams& params,
                                   const std::vector<Vec>& points,
                                   const Vec& losses) {
  validate(params);
  if (losses.size() < 2) {
    throw std::invalid_argument("estimator: need at least two losses");
  }
  check_losses(losses);
  return weighted_score_average(params, points, losses);
}

GradientEstimate es_gradient_plain(const BeliefParams& params,
                                   const CandidateBatch& batch,
                                   const Vec& losses) {
  return es_gradient_plain(params, batch.points, losses);
}

}  // namespace cones
