#include "cones/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "cones/adam.hpp"
#include "cones/estimator.hpp"
#include "cones/natgrad.hpp"
#include "cones/solver.hpp"
#include "json.hpp"

namespace cones {

namespace fs = std::filesystem;
using nlohmann::json;

std::string method_name(Method m) {
  switch (m) {
    case Method::es:
      return "es";
    case Method::nes:
      return "nes";
    case Method::cones:
      return "cones";
  }
  throw std::invalid_argument("harness: unknown method");
}

Method method_from_name(const std::string& name) {
  if (name == "es") return Method::es;
  if (name == "nes") return Method::nes;
  if (name == "cones") return Method::cones;
  throw std::invalid_argument("harness: unknown method '" + name + "'");
}

void validate_config(const RunConfig& config) {
  if (config.dim < 1) {
    throw std::invalid_argument("config: dim must be >= 1");
  }
  if (static_cast<std::size_t>(config.dim) <
      benchmark_min_dim(config.benchmark)) {
    throw std::invalid_argument("config: dim too small for benchmark " +
                                benchmark_name(config.benchmark));
  }
  if (config.pop < 2 || config.pop % 2 != 0) {
    throw std::invalid_argument("config: pop must be even and >= 2");
  }
  if (config.iters < 1) {
    throw std::invalid_argument("config: iters must be >= 1");
  }
  if (!(config.lr_mean > 0.0) || !(config.lr_logvar > 0.0) ||
      !std::isfinite(config.lr_mean) || !std::isfinite(config.lr_logvar)) {
    throw std::invalid_argument("config: learning rates must be positive");
  }
  if (!(config.init_std > 0.0) || !std::isfinite(config.init_std) ||
      !std::isfinite(config.init_mean)) {
    throw std::invalid_argument("config: malformed initial belief");
  }
  if (config.method == Method::cones) {
    if (!config.epsilon.has_value()) {
      throw std::invalid_argument("config: method cones requires epsilon");
    }
    if (!(*config.epsilon > 0.0) || !std::isfinite(*config.epsilon)) {
      throw std::invalid_argument("config: epsilon must be positive");
    }
  } else if (config.epsilon.has_value()) {
    throw std::invalid_argument(
        "config: epsilon is only meaningful for method cones");
  }
}

NumericalAbort::NumericalAbort(int iteration, int candidate)
    : std::runtime_error("non-finite loss at iteration " +
                         std::to_string(iteration) + ", candidate " +
                         std::to_string(candidate)),
      iteration_(iteration),
      candidate_(candidate) {}

RunRecord run(const RunConfig& config) {
  validate_config(config);
  const std::size_t n = static_cast<std::size_t>(config.dim);
  const std::size_t pop = static_cast<std::size_t>(config.pop);

  Vec theta(2 * n);
  const double init_logvar = 2.0 * std::log(config.init_std);
  for (std::size_t i = 0; i < n; ++i) {
    theta[i] = config.init_mean;
    theta[n + i] = init_logvar;
  }
  AdamState state(2 * n);
  std::mt19937_64 rng(config.seed);

  RunRecord record;
  record.config = config;
  record.rows.reserve(static_cast<std::size_t>(config.iters));

  Vec losses(pop);
  for (int iter = 1; iter <= config.iters; ++iter) {
    BeliefParams params;
    params.mean.assign(theta.begin(), theta.begin() + n);
    params.logvar.assign(theta.begin() + n, theta.end());

    const CandidateBatch batch = sample_antithetic(params, pop, rng);
    for (std::size_t k = 0; k < pop; ++k) {
      losses[k] = evaluate(config.benchmark, batch.points[k]);
      if (!std::isfinite(losses[k])) {
        throw NumericalAbort(iter, static_cast<int>(k));
      }
    }

    const GradientEstimate g = es_gradient(params, batch, losses);
    Vec direction;
    std::optional<double> kl;
    switch (config.method) {
      case Method::es:
        direction = g.g;
        break;
      case Method::nes:
        direction = natural_gradient(params, g);
        break;
      case Method::cones: {
        ConesSolution sol = solve(params, g, *config.epsilon);
        kl = sol.achieved_kl;
        direction = std::move(sol.delta);
        break;
      }
    }

    AdamStep step =
        adam_step(state, theta, direction, config.lr_mean, config.lr_logvar);
    double step_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double diff = step.theta[i] - theta[i];
      step_sq += diff * diff;
    }
    state = std::move(step.state);
    theta = std::move(step.theta);

    Vec mean(theta.begin(), theta.begin() + n);
    IterRow row;
    row.iter = iter;
    row.evals = static_cast<std::int64_t>(iter) * config.pop;
    row.loss = evaluate(config.benchmark, mean);
    row.step_size = std::sqrt(step_sq);
    row.kl = kl;
    record.rows.push_back(std::move(row));
  }

  record.final_mean.assign(theta.begin(), theta.begin() + n);
  record.final_logvar.assign(theta.begin() + n, theta.end());
  return record;
}

namespace {

json config_to_json(const RunConfig& config) {
  json j;
  j["method"] = method_name(config.method);
  j["benchmark"] = benchmark_name(config.benchmark);
  j["dim"] = config.dim;
  j["pop"] = config.pop;
  j["iters"] = config.iters;
  j["lr_mean"] = config.lr_mean;
  j["lr_logvar"] = config.lr_logvar;
  if (config.epsilon.has_value()) {
    j["epsilon"] = *config.epsilon;
  } else {
    j["epsilon"] = nullptr;
  }
  j["init_mean"] = config.init_mean;
  j["init_std"] = config.init_std;
  j["seed"] = config.seed;
  return j;
}

RunConfig config_from_json(const json& j) {
  RunConfig config;
  config.method = method_from_name(j.at("method").get<std::string>());
  config.benchmark =
      benchmark_from_name(j.at("benchmark").get<std::string>());
  config.dim = j.at("dim").get<int>();
  config.pop = j.at("pop").get<int>();
  config.iters = j.at("iters").get<int>();
  config.lr_mean = j.at("lr_mean").get<double>();
  config.lr_logvar = j.at("lr_logvar").get<double>();
  if (!j.at("epsilon").is_null()) {
    config.epsilon = j.at("epsilon").get<double>();
  }
  config.init_mean = j.at("init_mean").get<double>();
  config.init_std = j.at("init_std").get<double>();
  config.seed = j.at("seed").get<std::uint64_t>();
  return config;
}

void format_double(std::string& out, double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  out += buf;
}

}  // namespace

void emit(const RunRecord& record, const std::string& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw std::runtime_error("emit: cannot create directory '" + out_dir +
                             "': " + ec.message());
  }

  const std::string json_path = (fs::path(out_dir) / "run.json").string();
  {
    json j;
    j["schema"] = "cones-run/1";
    j["config"] = config_to_json(record.config);
    j["final_mean"] = record.final_mean;
    j["final_logvar"] = record.final_logvar;
    std::ofstream out(json_path, std::ios::binary);
    if (!out) {
      throw std::runtime_error("emit: cannot open '" + json_path + "'");
    }
    out << j.dump(2) << '\n';
    if (!out) {
      throw std::runtime_error("emit: write failed for '" + json_path + "'");
    }
  }

  const std::string csv_path = (fs::path(out_dir) / "trace.csv").string();
  std::ofstream out(csv_path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("emit: cannot open '" + csv_path + "'");
  }
  out << "iter,evals,loss,step_size,kl,wall_ms\n";
  std::string line;
  for (const IterRow& row : record.rows) {
    line.clear();
    line += std::to_string(row.iter);
    line += ',';
    line += std::to_string(row.evals);
    line += ',';
    format_double(line, row.loss);
    line += ',';
    format_double(line, row.step_size);
    line += ',';
    if (row.kl.has_value()) {
      format_double(line, *row.kl);
    }
    line += ',';
    line += std::to_string(row.wall_ms);
    line += '\n';
    out << line;
  }
  if (!out) {
    throw std::runtime_error("emit: write failed for '" + csv_path + "'");
  }
}

RunConfig read_run_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "'");
  }
  json j = json::parse(in);
  return config_from_json(j.at("config"));
}

namespace {

double median_of(Vec values) {
  std::sort(values.begin(), values.end());
  const std::size_t count = values.size();
  if (count % 2 == 1) return values[count / 2];
  return 0.5 * (values[count / 2 - 1] + values[count / 2]);
}

double sample_stddev(const Vec& values) {
  const std::size_t count = values.size();
  if (count < 2) return 0.0;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(count);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(count - 1));
}

}  // namespace

std::vector<RunRecord> sweep(const RunConfig& config,
                             const std::vector<std::uint64_t>& seeds,
                             const std::string& out_dir) {
  if (seeds.empty()) {
    throw std::invalid_argument("sweep: need at least one seed");
  }
  std::vector<RunRecord> records;
  records.reserve(seeds.size());
  for (std::uint64_t seed : seeds) {
    RunConfig cfg = config;
    cfg.seed = seed;
    RunRecord record = run(cfg);
    emit(record,
         (fs::path(out_dir) / ("seed_" + std::to_string(seed))).string());
    records.push_back(std::move(record));
  }

  const std::string csv_path = (fs::path(out_dir) / "summary.csv").string();
  std::ofstream out(csv_path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("sweep: cannot open '" + csv_path + "'");
  }
  out << "iter,evals,loss_median,loss_std,step_size_median,step_size_std,"
         "kl_median,kl_std\n";
  const std::size_t iters = records.front().rows.size();
  const bool has_kl = config.method == Method::cones;
  std::string line;
  Vec losses(records.size());
  Vec steps(records.size());
  Vec kls(records.size());
  for (std::size_t r = 0; r < iters; ++r) {
    for (std::size_t s = 0; s < records.size(); ++s) {
      losses[s] = records[s].rows[r].loss;
      steps[s] = records[s].rows[r].step_size;
      if (has_kl) kls[s] = records[s].rows[r].kl.value();
    }
    line.clear();
    line += std::to_string(records.front().rows[r].iter);
    line += ',';
    line += std::to_string(records.front().rows[r].evals);
    line += ',';
    format_double(line, median_of(losses));
    line += ',';
    format_double(line, sample_stddev(losses));
    line += ',';
    format_double(line, median_of(steps));
    line += ',';
    format_double(line, sample_stddev(steps));
    line += ',';
    if (has_kl) {
      format_double(line, median_of(kls));
      line += ',';
      format_double(line, sample_stddev(kls));
    } else {
      line += ',';
    }
    line += '\n';
    out << line;
  }
  if (!out) {
    throw std::runtime_error("sweep: write failed for '" + csv_path + "'");
  }
  return records;
}

}  // namespace cones
