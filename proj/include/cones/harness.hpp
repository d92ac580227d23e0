#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cones/belief.hpp"
#include "cones/benchmarks.hpp"

namespace cones {

enum class Method { es, nes, cones };

std::string method_name(Method m);
Method method_from_name(const std::string& name);

struct RunConfig {
  Method method = Method::es;
  BenchmarkId benchmark = BenchmarkId::sphere;
  int dim = 0;
  int pop = 100;
  int iters = 0;
  double lr_mean = 0.1;
  double lr_logvar = 0.1;
  std::optional<double> epsilon;  // required iff method == cones
  double init_mean = 0.0;
  double init_std = 1.0;
  std::uint64_t seed = 0;

  bool operator==(const RunConfig&) const = default;
};

/// Throws std::invalid_argument when the configuration is unusable
/// (bad sizes, missing or superfluous epsilon, non-positive rates...).
void validate_config(const RunConfig& config);

struct IterRow {
  int iter = 0;                  // 1-based
  std::int64_t evals = 0;        // iter * pop
  double loss = 0.0;             // loss at the post-update belief mean
  double step_size = 0.0;        // Euclidean norm of the mean update
  std::optional<double> kl;      // achieved KL, cones only
  std::int64_t wall_ms = 0;      // always 0: traces stay byte-reproducible
};

struct RunRecord {
  RunConfig config;
  std::vector<IterRow> rows;
  Vec final_mean;
  Vec final_logvar;
};

/// Raised when a candidate evaluates to a non-finite loss; carries the
/// 1-based iteration of the offending row.
class NumericalAbort : public std::runtime_error {
 public:
  NumericalAbort(int iteration, int candidate);
  int iteration() const { return iteration_; }
  int candidate() const { return candidate_; }

 private:
  int iteration_;
  int candidate_;
};

/// Runs the optimisation loop: sample an antithetic batch, evaluate, build
/// the rank-shaped gradient, transform it per the configured method, then
/// take one Adam step. Fully deterministic given the config (one RNG stream,
/// sequential evaluation).
RunRecord run(const RunConfig& config);

/// Writes out_dir/run.json (schema-versioned config + final state) and
/// out_dir/trace.csv (header iter,evals,loss,step_size,kl,wall_ms; numbers
/// with 17 significant digits). Throws std::runtime_error naming the path
/// on I/O failure.
void emit(const RunRecord& record, const std::string& out_dir);

/// Reads back the config block of an emitted run.json.
RunConfig read_run_config(const std::string& path);

/// Runs the config once per seed, emitting each run under
/// out_dir/seed_<seed>/ plus an out_dir/summary.csv with the per-iteration
/// median and sample standard deviation across seeds.
std::vector<RunRecord> sweep(const RunConfig& config,
                             const std::vector<std::uint64_t>& seeds,
                             const std::string& out_dir);

}  // namespace cones
