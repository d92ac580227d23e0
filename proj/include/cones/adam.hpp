#pragma once

#include <cstdint>

#include "cones/belief.hpp"

namespace cones {

/// First/second moment accumulators for Adam over the packed 2n parameter
/// vector. Defaults: beta1 = 0.9, beta2 = 0.999, eps_hat = 1e-8.
struct AdamState {
  Vec m;
  Vec v;
  std::int64_t t = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps_hat = 1e-8;

  AdamState() = default;
  explicit AdamState(std::size_t packed_dim)
      : m(packed_dim, 0.0), v(packed_dim, 0.0) {}
};

struct AdamStep {
  AdamState state;
  Vec theta;
};

/// One bias-corrected descending Adam update. theta and grad are packed
/// (mean block, logvar block) of length 2n; lr_mean applies to the first
/// block and lr_logvar to the second. Pure: returns the advanced state and
/// parameters instead of mutating.
AdamStep adam_step(const AdamState& state, const Vec& theta, const Vec& grad,
                   double lr_mean, double lr_logvar);

}  // namespace cones
