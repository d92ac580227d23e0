#include "cones/natgrad.hpp"

#include <cmath>
#include <stdexcept>

namespace cones {

FisherDiagonal fisher_diagonal(const BeliefParams& params) {
  validate(params);
  const std::size_t n = params.dim();
  FisherDiagonal f;
  f.d.resize(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    f.d[i] = std::exp(-params.logvar[i]);
    f.d[n + i] = 0.5;
  }
  return f;
}

Vec natural_gradient(const BeliefParams& params, const GradientEstimate& g) {
  validate(params);
  const std::size_t n = params.dim();
  if (g.g.size() != 2 * n) {
    throw std::invalid_argument("natgrad: gradient must have length 2n");
  }
  Vec out(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = params.var(i) * g.g[i];
    out[n + i] = 2.0 * g.g[n + i];
  }
  return out;
}

double fisher_rao_norm(const BeliefParams& params, const Vec& v) {
  validate(params);
  const std::size_t n = params.dim();
  if (v.size() != 2 * n) {
    throw std::invalid_argument("natgrad: vector must have length 2n");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += std::exp(-params.logvar[i]) * v[i] * v[i];
    sum += 0.5 * v[n + i] * v[n + i];
  }
  return std::sqrt(sum);
}

}  // namespace cones
