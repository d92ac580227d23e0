#include "cones/belief.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cones {

double BeliefParams::var(std::size_t i) const { return std::exp(logvar[i]); }

double BeliefParams::stddev(std::size_t i) const {
  return std::exp(0.5 * logvar[i]);
}

void validate(const BeliefParams& params) {
  if (params.mean.empty()) {
    throw std::invalid_argument("belief: dimension must be >= 1");
  }
  if (params.mean.size() != params.logvar.size()) {
    throw std::invalid_argument("belief: mean and logvar sizes differ");
  }
  for (std::size_t i = 0; i < params.mean.size(); ++i) {
    if (!std::isfinite(params.mean[i]) || !std::isfinite(params.logvar[i])) {
      throw std::invalid_argument("belief: non-finite parameter at index " +
                                  std::to_string(i));
    }
  }
}

CandidateBatch batch_from_noise(const BeliefParams& params,
                                std::vector<Vec> noise) {
  validate(params);
  const std::size_t n = params.dim();
  CandidateBatch batch;
  batch.points.resize(2 * noise.size());
  for (std::size_t k = 0; k < noise.size(); ++k) {
    if (noise[k].size() != n) {
      throw std::invalid_argument("belief: noise vector dimension mismatch");
    }
    Vec plus(n);
    Vec minus(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double step = params.stddev(i) * noise[k][i];
      plus[i] = params.mean[i] + step;
      minus[i] = params.mean[i] - step;
    }
    batch.points[2 * k] = std::move(plus);
    batch.points[2 * k + 1] = std::move(minus);
  }
  batch.base_noise = std::move(noise);
  return batch;
}

CandidateBatch sample_antithetic(const BeliefParams& params,
                                 std::size_t n_candidates,
                                 std::mt19937_64& rng) {
  validate(params);
  if (n_candidates < 2 || n_candidates % 2 != 0) {
    throw std::invalid_argument(
        "belief: candidate count must be even and >= 2");
  }
  const std::size_t n = params.dim();
  std::normal_distribution<double> standard_normal(0.0, 1.0);
  std::vector<Vec> noise(n_candidates / 2, Vec(n));
  for (auto& z : noise) {
    for (std::size_t i = 0; i < n; ++i) {
      z[i] = standard_normal(rng);
    }
  }
  return batch_from_noise(params, std::move(noise));
}

Vec score(const BeliefParams& params, const Vec& x) {
  validate(params);
  const std::size_t n = params.dim();
  if (x.size() != n) {
    throw std::invalid_argument("belief: point dimension mismatch");
  }
  Vec s(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = params.var(i);
    const double dx = x[i] - params.mean[i];
    s[i] = dx / v;
    s[n + i] = 0.5 * (dx * dx / v - 1.0);
  }
  return s;
}

namespace detail {
double kl_term(double dmu, double deta, double var0) {
  double e = std::expm1(deta) - deta;
  if (e < 0.0) e = 0.0;  // roundoff guard; the term is >= 0 exactly
  return e + dmu * dmu / var0;
}
}  // namespace detail

double kl_divergence(const BeliefParams& p, const BeliefParams& q) {
  validate(p);
  validate(q);
  if (p.dim() != q.dim()) {
    throw std::invalid_argument("belief: KL needs equal dimensions");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    const double t = p.logvar[i] - q.logvar[i];
    const double dmu = p.mean[i] - q.mean[i];
    sum += detail::kl_term(dmu, t, q.var(i));
  }
  return 0.5 * sum;
}

double kl_from_delta(const BeliefParams& params, const Vec& delta) {
  validate(params);
  const std::size_t n = params.dim();
  if (delta.size() != 2 * n) {
    throw std::invalid_argument("belief: delta must have length 2n");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += detail::kl_term(delta[i], delta[n + i], params.var(i));
  }
  return 0.5 * sum;
}

}  // namespace cones
