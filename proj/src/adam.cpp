#include "cones/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace cones {

AdamStep adam_step(const AdamState& state, const Vec& theta, const Vec& grad,
                   double lr_mean, double lr_logvar) {
  const std::size_t packed = theta.size();
  if (packed == 0 || packed % 2 != 0) {
    throw std::invalid_argument("adam: packed dimension must be even");
  }
  if (grad.size() != packed || state.m.size() != packed ||
      state.v.size() != packed) {
    throw std::invalid_argument("adam: size mismatch");
  }
  if (!(lr_mean > 0.0) || !(lr_logvar > 0.0) || !std::isfinite(lr_mean) ||
      !std::isfinite(lr_logvar)) {
    throw std::invalid_argument("adam: learning rates must be positive");
  }
  for (double g : grad) {
    if (!std::isfinite(g)) {
      throw std::invalid_argument("adam: non-finite gradient entry");
    }
  }

  AdamStep out;
  out.state = state;
  out.state.t = state.t + 1;
  out.theta = theta;
  const double bc1 =
      1.0 - std::pow(state.beta1, static_cast<double>(out.state.t));
  const double bc2 =
      1.0 - std::pow(state.beta2, static_cast<double>(out.state.t));
  const std::size_t n = packed / 2;
  for (std::size_t j = 0; j < packed; ++j) {
    const double g = grad[j];
    const double m = state.beta1 * state.m[j] + (1.0 - state.beta1) * g;
    const double v = state.beta2 * state.v[j] + (1.0 - state.beta2) * g * g;
    out.state.m[j] = m;
    out.state.v[j] = v;
    const double m_hat = m / bc1;
    const double v_hat = v / bc2;
    const double lr = j < n ? lr_mean : lr_logvar;
    out.theta[j] = theta[j] - lr * m_hat / (std::sqrt(v_hat) + state.eps_hat);
  }
  return out;
}

}  // namespace cones
