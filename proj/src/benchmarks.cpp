#include "cones/benchmarks.hpp"

#include <cmath>
#include <stdexcept>

namespace cones {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

void check_nonempty(const Vec& x) {
  if (x.empty()) {
    throw std::invalid_argument("benchmark: dimension must be >= 1");
  }
}
}  // namespace

double sphere(const Vec& x) {
  check_nonempty(x);
  double sum = 0.0;
  for (double xi : x) sum += xi * xi;
  return sum;
}

double rosenbrock(const Vec& x) {
  if (x.size() < 2) {
    throw std::invalid_argument("benchmark: rosenbrock needs dim >= 2");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double a = x[i] * x[i] - x[i + 1];
    const double b = 1.0 - x[i];
    sum += 100.0 * a * a + b * b;
  }
  return sum;
}

double rastrigin(const Vec& x) {
  check_nonempty(x);
  double sum = 10.0 * static_cast<double>(x.size());
  for (double xi : x) {
    sum += xi * xi - 10.0 * std::cos(kTwoPi * xi);
  }
  return sum;
}

double lunacek(const Vec& x) {
  check_nonempty(x);
  const double n = static_cast<double>(x.size());
  const double mu1 = 2.5;
  const double d = 1.0;
  const double s = 1.0 - 1.0 / (2.0 * std::sqrt(n + 20.0) - 8.2);
  // For n == 1 the second sphere's centre is not a real number (s <= 0);
  // fmin then ignores the NaN branch and the first sphere decides alone.
  const double mu2 = -std::sqrt((mu1 * mu1 - d) / s);
  double sphere1 = 0.0;
  double sphere2 = 0.0;
  double osc = 0.0;
  for (double xi : x) {
    const double d1 = xi - mu1;
    const double d2 = xi - mu2;
    sphere1 += d1 * d1;
    sphere2 += d2 * d2;
    osc += 1.0 - std::cos(kTwoPi * d1);
  }
  return std::fmin(sphere1, d * n + s * sphere2) + 10.0 * osc;
}

double evaluate(BenchmarkId id, const Vec& x) {
  switch (id) {
    case BenchmarkId::sphere:
      return sphere(x);
    case BenchmarkId::rosenbrock:
      return rosenbrock(x);
    case BenchmarkId::rastrigin:
      return rastrigin(x);
    case BenchmarkId::lunacek:
      return lunacek(x);
  }
  throw std::invalid_argument("benchmark: unknown id");
}

std::size_t benchmark_min_dim(BenchmarkId id) {
  return id == BenchmarkId::rosenbrock ? 2 : 1;
}

std::string benchmark_name(BenchmarkId id) {
  switch (id) {
    case BenchmarkId::sphere:
      return "sphere";
    case BenchmarkId::rosenbrock:
      return "rosenbrock";
    case BenchmarkId::rastrigin:
      return "rastrigin";
    case BenchmarkId::lunacek:
      return "lunacek";
  }
  throw std::invalid_argument("benchmark: unknown id");
}

BenchmarkId benchmark_from_name(const std::string& name) {
  if (name == "sphere") return BenchmarkId::sphere;
  if (name == "rosenbrock") return BenchmarkId::rosenbrock;
  if (name == "rastrigin") return BenchmarkId::rastrigin;
  if (name == "lunacek") return BenchmarkId::lunacek;
  throw std::invalid_argument("benchmark: unknown name '" + name + "'");
}

}  // namespace cones
