// Command-line front end: single runs and multi-seed sweeps.
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cones/harness.hpp"

namespace {

int run_main(int argc, char** argv) {
  CLI::App app{
      "Blackbox optimisation of benchmark functions over diagonal-Gaussian "
      "search distributions (methods: es, nes, cones)"};
  app.set_version_flag("--version", "1.0.0");
  app.set_config("--config", "", "Read options from a key=value file");
  app.fallthrough();

  std::string method_str;
  std::string benchmark_str;
  int dim = 0;
  int pop = 100;
  int iters = 0;
  double lr_mean = 0.1;
  double lr_logvar = 0.1;
  double epsilon = 100.0;
  double init_mean = 0.0;
  double init_std = 1.0;
  std::uint64_t seed = 0;
  std::string out_dir;
  std::vector<std::uint64_t> seeds;

  app.add_option("--method", method_str, "Update rule")
      ->required()
      ->check(CLI::IsMember({"es", "nes", "cones"}));
  app.add_option("--benchmark", benchmark_str, "Loss function")
      ->required()
      ->check(CLI::IsMember({"sphere", "rosenbrock", "rastrigin", "lunacek"}));
  app.add_option("--dim", dim, "Search space dimension")->required();
  app.add_option("--pop", pop, "Candidates per iteration (even)")
      ->capture_default_str();
  app.add_option("--iters", iters, "Iteration count")->required();
  app.add_option("--lr-mean", lr_mean, "Adam rate for the mean block")
      ->capture_default_str();
  app.add_option("--lr-logvar", lr_logvar, "Adam rate for the log-variance block")
      ->capture_default_str();
  auto* eps_opt =
      app.add_option("--epsilon", epsilon,
                     "KL trust-region radius (cones only; KL bound is epsilon^2)")
          ->capture_default_str();
  app.add_option("--init-mean", init_mean,
                 "Initial mean, replicated across coordinates")
      ->capture_default_str();
  app.add_option("--init-std", init_std, "Initial standard deviation")
      ->capture_default_str();
  auto* seed_opt =
      app.add_option("--seed", seed, "RNG seed")->capture_default_str();
  app.add_option("--out", out_dir, "Output directory")->required();

  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Repeat the run across seeds and emit "
                                  "per-seed traces plus summary.csv");
  sweep_cmd->fallthrough();
  sweep_cmd->add_option("--seeds", seeds, "Comma-separated seed list")
      ->required()
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  cones::RunConfig config;
  try {
    config.method = cones::method_from_name(method_str);
    config.benchmark = cones::benchmark_from_name(benchmark_str);
    config.dim = dim;
    config.pop = pop;
    config.iters = iters;
    config.lr_mean = lr_mean;
    config.lr_logvar = lr_logvar;
    config.init_mean = init_mean;
    config.init_std = init_std;
    config.seed = seed;
    if (config.method == cones::Method::cones) {
      config.epsilon = epsilon;
    } else if (eps_opt->count() > 0) {
      throw std::invalid_argument(
          "config: --epsilon is only valid with --method cones");
    }
    if (sweep_cmd->parsed() && seed_opt->count() > 0) {
      throw std::invalid_argument(
          "config: use --seeds (not --seed) with the sweep subcommand");
    }
    cones::validate_config(config);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (sweep_cmd->parsed()) {
      const auto records = cones::sweep(config, seeds, out_dir);
      for (std::size_t i = 0; i < records.size(); ++i) {
        std::printf("seed %llu: final loss %.6g\n",
                    static_cast<unsigned long long>(seeds[i]),
                    records[i].rows.back().loss);
      }
      std::printf("wrote %zu runs and summary.csv under %s\n", records.size(),
                  out_dir.c_str());
    } else {
      const cones::RunRecord record = cones::run(config);
      cones::emit(record, out_dir);
      std::printf("final loss %.6g after %lld evaluations; wrote %s\n",
                  record.rows.back().loss,
                  static_cast<long long>(record.rows.back().evals),
                  out_dir.c_str());
    }
  } catch (const cones::NumericalAbort& e) {
    std::fprintf(stderr, "numerical abort: %s\n", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - t0);
  std::fprintf(stderr, "completed in %lld ms\n",
               static_cast<long long>(elapsed.count()));
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run_main(argc, argv); }
