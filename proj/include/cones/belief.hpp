#pragma once

#include <cstddef>
#include <random>
#include <vector>

namespace cones {

using Vec = std::vector<double>;

/// Diagonal-Gaussian belief distribution in (mean, log-variance) coordinates.
/// Storing log(sigma^2) keeps every implied standard deviation strictly
/// positive without clipping.
struct BeliefParams {
  Vec mean;    // mu
  Vec logvar;  // eta, eta[i] = log(sigma_i^2)

  std::size_t dim() const { return mean.size(); }
  double var(std::size_t i) const;
  double stddev(std::size_t i) const;
};

/// Candidates drawn in +/- pairs around the mean: points[2k] = mu + sigma*z_k
/// and points[2k+1] = mu - sigma*z_k for the shared draw z_k.
struct CandidateBatch {
  std::vector<Vec> points;
  std::vector<Vec> base_noise;  // z_1 .. z_{N/2}

  std::size_t size() const { return points.size(); }
};

/// Throws std::invalid_argument if the parameters are malformed
/// (size mismatch, empty, or non-finite entries).
void validate(const BeliefParams& params);

/// Expands N/2 standard-normal draws into the antithetic batch.
CandidateBatch batch_from_noise(const BeliefParams& params,
                                std::vector<Vec> noise);

/// Draws n_candidates (even, >= 2) candidates as antithetic pairs. All noise
/// is pulled from `rng` up front, one vector per pair, so downstream
/// evaluation order cannot perturb the sample set.
CandidateBatch sample_antithetic(const BeliefParams& params,
                                 std::size_t n_candidates,
                                 std::mt19937_64& rng);

/// Score function d/dtheta ln P_theta(x), packed as (mean block, logvar
/// block) of length 2n.
Vec score(const BeliefParams& params, const Vec& x);

/// KL divergence D(P_p || P_q) between two beliefs of equal dimension.
double kl_divergence(const BeliefParams& p, const BeliefParams& q);

/// KL divergence of the shifted belief (params + delta) from params, with
/// delta packed as (dmu, deta). Algebraically equal to kl_divergence of the
/// shifted belief, but evaluated directly in the increment:
///   0.5 * sum_i [ exp(deta_i) - 1 - deta_i + dmu_i^2 / var_i ]
/// This is the form the trust-region solver bisects on.
double kl_from_delta(const BeliefParams& params, const Vec& delta);

namespace detail {
// One coordinate of kl_from_delta before the global 1/2. The exp-part is
// clamped at zero; it is nonnegative in exact arithmetic.
double kl_term(double dmu, double deta, double var0);
}  // namespace detail

}  // namespace cones
